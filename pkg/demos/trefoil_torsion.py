# Khovanov homology of the trefoil, over Z and over a few fields.
# Run from the repository root: python demos/trefoil_torsion.py
from khtorsion.diagram import load, mirror
from khtorsion.khovanov import (kh, torsion_summands, graded_euler_characteristic,
                                jones_from_bracket, kauffman_bracket_oracle)

left = load("3_1")
print(left)
print(kh(left))

# one Z_2, sitting in homological degree -2
print(torsion_summands(kh(left)))

# the mirror moves free classes to (-i,-j) but torsion to (1-i,-j)
right = mirror(left)
print(torsion_summands(kh(right)))

# over F_2 the torsion shows up twice, once in each adjacent degree
print(kh(left, "F2"))
print(kh(left, "Q"))

# graded Euler characteristic against an independent bracket state sum
chi = graded_euler_characteristic(kh(left))
print(chi)
print(chi == jones_from_bracket(kauffman_bracket_oracle(left)))

# figure eight: amphichiral, two Z_2's
fig8 = kh(load("4_1"))
print(fig8)
print(torsion_summands(fig8))
