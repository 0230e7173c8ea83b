# Satellites with a winding-one ribbon pattern keep the companion's
# Alexander polynomial, even though the knots themselves change.
from khtorsion.alexander import alexander
from khtorsion.diagram import load, livingston_pattern, satellite, AnnularPattern
from khtorsion.khovanov import kh

P = livingston_pattern()
print(P.width, P.n)

# in S^3 the pattern is unknotted
print(kh(P.closure()))

# but together with a meridian of the solid torus it is not the Hopf link,
# so P is not the core
print(kh(P.with_axis()))
print(kh(AnnularPattern((), (1,), (1,)).with_axis()))

for name in ["3_1", "3_1_right", "4_1", "5_2"]:
    K = load(name)
    S = satellite(K, P)
    # 9 crossings per companion crossing, the pattern, then framing twists
    print(name, K.n, S.n, alexander(K), alexander(S))
