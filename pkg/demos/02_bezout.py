"""Cutting a toric variety by a monomial: exact arithmetic Bezout.

For the conic the coordinate hyperplane x_0 = 0 meets the curve only at the
point (0 : 0 : 1), with multiplicity 2, so the height of the cut is 0.  For a
curve whose configuration repeats exponents the cut points carry nonzero
heights, which we compute by hand from the two boundary points of the curve
and compare with the cell-by-cell formula.

Run:  python demos/02_bezout.py
"""

from fractions import Fraction
from math import gcd, lcm

from toricheight import LogValue, ToricInstance, monomial_bezout


def weil_height(point):
    den = lcm(*(Fraction(x).denominator for x in point))
    ints = [int(Fraction(x) * den) for x in point]
    g = gcd(*ints)
    return LogValue.log(max(abs(x) // g for x in ints))


conic = ToricInstance.from_point([[0], [1], [2]], [1, 2, 1])
r = monomial_bezout(conic, [1, 0, 0])
print("conic cut by x_0:")
print(f"  D = {r.D}, a = {r.a}, height of the conic = {r.base_height}")
for p in r.places:
    for c in p.cells:
        print(f"  place {p.place}: cell [{', '.join(str(v[0]) for v in c.polytope.vertices)}] "
              f"value at a = {c.value_at_a}, length {c.volume}")
print(f"  height of the cut = {r.height}  (the point (0:0:1) has height 0)")
print(f"  effective, so height <= D * height(X): {r.inequality_holds}")
print()

# t -> (2, 3 t^0, 5 t, t^3 / 4, 6 t^3): at t = 0 the curve tends to (2 : 3 : 0 : 0 : 0),
# at t = oo to (0 : 0 : 0 : 1/4 : 6)
A = [[0], [0], [1], [3], [3]]
alpha = [2, 3, 5, Fraction(1, 4), 6]
X = ToricInstance.from_point(A, alpha)
low, high = weil_height([2, 3]), weil_height([Fraction(1, 4), 6])
print(f"curve with exponents {[a[0] for a in A]}; boundary heights {low} and {high}")
for i in range(len(A)):
    b = [int(j == i) for j in range(len(A))]
    expected = low * (A[i][0] - 0) + high * (3 - A[i][0])
    got = monomial_bezout(X, b).height
    print(f"  x_{i} = 0: formula {got}, by hand {expected}, equal: {got == expected}")
