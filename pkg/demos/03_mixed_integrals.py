"""Sup-convolution and mixed integrals of roof functions.

The tent on [0, 2] with peak log 2 convolved with itself is the tent on
[0, 4] scaled by two.  Mixed integrals turn the integral into a symmetric
multilinear form; with one block per factor they compute multiheights.  We
check the Segre expansion: the height of the product of two toric curves
equals the sum over index vectors of binomial coefficient times multiheight.

Run:  python demos/03_mixed_integrals.py
"""

from itertools import product
from math import comb

from toricheight import (LogValue, MultiInstance, ToricInstance, evaluate, integrate,
                         mixed_integral, normalized_height, normalized_multiheight, roof,
                         sup_convolution)

log2 = LogValue.log(2)
tent = roof([[0], [1], [2]], [0, log2, 0])
double = sup_convolution(tent, tent)
print("tent + tent (sup-convolution):")
for x in range(5):
    print(f"  at {x}: {evaluate(double, [x])}")
print(f"  integral {integrate(double)} = 4 * integral of the tent ({integrate(tent)})")
print(f"  MI(tent, tent) = {mixed_integral([tent, tent])}")
print()

blocks = [([[0], [1], [2]], [1, 6, 1]), ([[0], [1], [3]], [2, 5, 1])]
X = tuple(ToricInstance.from_point(A, al) for A, al in blocks)
total = LogValue.zero()
for c0 in range(3):
    c = (c0, 2 - c0)
    h = normalized_multiheight(MultiInstance(X, c))
    print(f"multiheight of index {c}: {h}")
    total = total + h * comb(2, c0)

A, alpha = [], []
for (a, x), (b, y) in product(zip(*blocks[0]), zip(*blocks[1])):
    A.append([a[0] + b[0]])
    alpha.append(x * y)
segre = normalized_height(ToricInstance.from_point(A, alpha))
print(f"sum with binomial weights: {total}")
print(f"height of the Segre product: {segre}")
print(f"equal: {segre == total}")
