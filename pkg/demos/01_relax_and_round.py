"""Relax-and-round on small covering instances.

Solves the hull relaxation exactly, rounds on an eps-grid, and compares
against the enumerated optimum.  The interesting part is the uniform
fractional solution of a single k-uniform covering edge: it costs 1/k
but every grid rounding of it pays the full 1, a gap of exactly k.
"""

from fractions import Fraction as F

from smcsp import (hvc, integrality_report, lp_value, round_solution,
                   solve_lp, ternary_chain)

for k in (2, 3, 4):
    inst = hvc(k)
    uniform = [F(1, k)] * k
    rounded = round_solution(inst, uniform, F(1, 2 * k))
    print(f"single {k}-uniform covering edge:")
    print(f"  relaxation value          {lp_value(inst)}")
    print(f"  rounding the uniform x    {rounded.value}  "
          f"(labels {rounded.labels})")
    print(f"  gap factor                {rounded.value / lp_value(inst)}")

# The solver itself returns a basic optimum, which for covering edges is
# a cheapest integral vertex of the hull polytope; rounding that is free.
inst = hvc(3)
sol = solve_lp(inst)
print(f"\nsolver's basic optimum for k=3: x = {sol.x} "
      f"(value {sol.objective})")
print(f"rounding it: {round_solution(inst, sol.x, F(1, 6)).value}")

# On alphabets beyond two the same machinery applies unchanged.
inst = ternary_chain()
report = integrality_report(inst, F(1, 4))
print(f"\nternary chain: lp {report['lp']}, round {report['round']}, "
      f"opt {report['opt']}")
print(f"round/opt = {report['round_over_opt']}, "
      f"opt/lp = {report['opt_over_lp']}")
