"""Separated, spanning and covering counts, and the inequalities tying them.

Walks through the four counts on a small planar point cloud, shows the
chain N(2e) <= R(e) <= S(e) <= R(e/2) <= N(e/2) holding with exact
solvers, and finishes with the box-counting ladder of the reciprocal
alphabet {0} u {1/n}, whose log-count/log(1/eps) ratios settle near 1/2.
"""

import math

import numpy as np

from mdimlab import (
    CountKind,
    FiniteMetricSpace,
    box_dimension_counts,
    count,
    dimension_report,
    greedy_net,
    make_reciprocal_alphabet,
)

rng = np.random.default_rng(0)
points = rng.random((24, 2))
space = FiniteMetricSpace.euclidean(points)
print(f"planar space: {len(space)} points, diameter {space.diam:.3f}\n")

eps = 0.22
labels = {
    CountKind.S: "max separated (pairwise > eps)",
    CountKind.R: "min spanning (all within < eps)",
    CountKind.N: "min open-ball cover",
    CountKind.C: "min closed-ball cover",
}
for kind, label in labels.items():
    res = count(space, eps, kind)
    print(f"  {kind.name}({eps}) = {res.value:3d}   {label} [exact={res.exact}]")

print("\nchain at several scales:")
for e in (0.4, 0.25, 0.15):
    vals = [
        count(space, 2 * e, CountKind.N).value,
        count(space, e, CountKind.R).value,
        count(space, e, CountKind.S).value,
        count(space, e / 2, CountKind.R).value,
        count(space, e / 2, CountKind.N).value,
    ]
    ok = all(a <= b for a, b in zip(vals, vals[1:]))
    print(f"  eps={e}: N(2e)={vals[0]} <= R={vals[1]} <= S={vals[2]} "
          f"<= R(e/2)={vals[3]} <= N(e/2)={vals[4]}  ->  {'ok' if ok else 'VIOLATED'}")

net = greedy_net(space, eps)
print(f"\ngreedy net at eps={eps}: {len(net)} points, "
      "simultaneously separated and covering")

print("\nreciprocal alphabet, 401 points:")
rec = make_reciprocal_alphabet(400)
ladder = [2.0**-k for k in range(4, 10)]
boxes = box_dimension_counts(rec, ladder)
rep = dimension_report([math.log(b.value) for b in boxes], ladder)
for b in boxes:
    print(f"  eps=2^{int(math.log2(b.eps)):3d}  intervals={b.value:3d}  "
          f"ratio={math.log(b.value) / math.log(1 / b.eps):.3f}")
print(f"tail ratio bracket: [{rep.ratio_lower:.3f}, {rep.ratio_upper:.3f}]  "
      "(the alphabet's box dimension is 1/2)")
