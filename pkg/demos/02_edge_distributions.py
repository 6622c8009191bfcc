"""From a fractional solution to a correlated distribution per edge.

Any hull-feasible solution decomposes each edge into a mixture of
accepted tuples.  Smoothing pushes a little mass toward the top label,
which bounds the smallest atom away from zero and pulls the maximal
correlation between coordinate groups strictly below one.
"""

from fractions import Fraction as F

from smcsp import (cheeger_check, extract_edge_distribution, hvc, margin,
                   maximal_correlation, min_atom, smooth, vc_edge)

inst = vc_edge()
x = [F(1, 2), F(1, 2)]
dist = extract_edge_distribution(inst, x, 0)
print("covering edge at the uniform solution:")
for atom, p in dist.atoms:
    print(f"  P{atom} = {p}")
print(f"  correlation across the edge: "
      f"{maximal_correlation(dist, [0], [1]):.6f}")

delta = F(1, 10)
sm = smooth(dist, delta)
print(f"\nafter smoothing with delta = {delta}:")
for atom, p in sm.atoms:
    print(f"  P{atom} = {p}")
print(f"  margins: {margin(sm, 0)} and {margin(sm, 1)}")
print(f"  smallest atom {min_atom(sm)} "
      f"(>= delta^2 * {min_atom(dist)} = {delta**2 * min_atom(dist)})")
print(f"  correlation now {maximal_correlation(sm, [0], [1]):.6f} = 9/11")

# The spectral-gap style certificate: connected support plus an atom
# bound keeps the correlation below 1 - alpha^2/2.
inst3 = hvc(3)
dist3 = smooth(extract_edge_distribution(inst3, [F(1, 3)] * 3, 0),
               F(1, 10))
for split in ([0], [0, 1]):
    rest = [i for i in range(3) if i not in split]
    report = cheeger_check(dist3, split, rest)
    print(f"\n3-uniform edge, split {split} | {rest}:")
    print(f"  rho = {report['rho']:.6f} <= bound {report['bound']:.6f} "
          f"-> ok = {report['ok']}")
