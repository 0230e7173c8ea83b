# A knot K sits inside K # 6_1 # ... # 6_1 and inside its Kinoshita-Terasaka join
# by ribbon concordance, so Kh(K) has to show up as a direct summand of both.
# The last computation (14 crossings) takes about a minute.
import time
from khtorsion.alexander import alexander, check_family
from khtorsion.diagram import load, connected_sum, kt_tangle, tangle_replace
from khtorsion.khovanov import kh, check_summand

K = load("3_1")
J0 = load("6_1")

# Alexander polynomials of K_n = K # n copies of 6_1 are all different
print(check_family(K, J0, 3))

K1 = connected_sum(K, J0)
print(K1.n, alexander(K1))
print(check_summand(kh(K), kh(K1)))

# the KT tangle: numerator closure is 11n42, denominator the 2-component unlink
t = kt_tangle()
print(t.n, alexander(t.numerator()), t.denominator().num_components)

# glue it between arcs 1 and 4 of the trefoil
Kp = tangle_replace(K, 1, 4, t)
print(Kp.n, alexander(Kp), alexander(K))

t0 = time.time()
big = kh(Kp)
print("%.1fs" % (time.time() - t0))
print(check_summand(kh(K), big))

# torsion in the bigger knot, for a look
for row in big.to_text().splitlines()[:6]:
    print(row)
