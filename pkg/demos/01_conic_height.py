"""The conic x_1^2 = 4 x_0 x_2 as the toric variety of A = (0, 1, 2), alpha = (1, 2, 1).

Walks through every ingredient of its normalized height: the weight vector
at each place, the roof over the segment [0, 2], its integral, and the
final sum.  A Monte-Carlo estimate of each roof integral is printed next to
the exact value.

Run:  python demos/01_conic_height.py
"""

from toricheight import ToricInstance, degree, integrate, normalized_height
from toricheight.oracle import estimate_integral

A = [[0], [1], [2]]
alpha = [1, 2, 1]
X = ToricInstance.from_point(A, alpha)

print(f"configuration A = {[a[0] for a in A]}, point alpha = {alpha}")
print(f"degree = 1! * length of [0, 2] = {degree(X)}")
print()

for place, mult, f in X.roofs():
    print(f"place {place}: tau = ({', '.join(map(str, f.heights))})")
    for cell in f.cells:
        lo, hi = cell.polytope.vertices[0][0], cell.polytope.vertices[-1][0]
        print(f"  on [{lo}, {hi}] the roof is {cell.gradient[0]} * x + {cell.constant}")
    below = [i for i, on in enumerate(f.on_roof) if not on]
    if below:
        print(f"  lifted points strictly below the roof: {below}")
    exact = integrate(f)
    mc = estimate_integral(f.points, [float(t) for t in f.heights], 100_000, seed=1)
    print(f"  integral = {exact} ~ {exact.approx(6)}; "
          f"Monte-Carlo {mc.estimate:.6f} +- {mc.std_error:.1g}")
print()

h = normalized_height(X)
print(f"normalized height = 2! * (sum of the integrals) = {h} ~ {h.approx(10)}")
