"""Heights of points on a torus orbit compared with height / degree.

For a toric variety X the ratio height(X) / degree(X) sits between the
successive minima of the height on X.  We sample points of the dense orbit
and print their Weil heights next to that ratio; the bounds are context
only and nothing is asserted about them.

Run:  python demos/04_orbits_and_minima.py
"""

from fractions import Fraction
from itertools import product

from toricheight import ToricInstance, minima_report

X = ToricInstance.from_point([(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)],
                             [3, Fraction(-5, 2), 7, Fraction(1, 6), 12])
grid = [Fraction(p, q) for p in (1, 2, 3) for q in (1, 2, 3)]
samples = [list(t) for t in product(sorted(set(grid)), repeat=2)]
r = minima_report(X, samples)
print(f"height {r.height} ~ {r.height.approx(4)}, degree {r.degree}")
print(f"height / degree ~ {r.height_over_degree.approx(4)}")
print(f"context: mu_1 >= {r.essential_minimum_lower_bound.approx(4)}, "
      f"sum of minima <= {r.minima_sum_upper_bound.approx(4)}")
best = sorted(zip(r.sample_heights, r.samples))[:5]
print(f"{len(samples)} orbit points sampled; the five lowest:")
for h, t in best:
    print(f"  t = ({', '.join(map(str, t))}): {h.approx(4)}")
