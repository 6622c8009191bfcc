"""Grid perturbation and exhaustive bucket rounding.

``perturb`` snaps a feasible fractional solution onto the epsilon grid.
Scalars round up to the next multiple of epsilon with 0 fixed.  Label
distributions are processed from the top label downward: each
coordinate rounds up while the running mass stays within one, the first
coordinate that would overflow absorbs the remainder, and everything
below it becomes zero.  The snapped distribution stochastically
dominates the original (every upper tail weakly grows), which is what
preserves hull feasibility for upward-closed constraints; rounding the
low labels up instead can push a solution out of the hull.  The
objective increases by at most ``eps`` for ``q == 2`` and at most
``eps * q**2`` otherwise, and never decreases.

``round_solution`` then groups vertices into buckets by their snapped
value and exhaustively searches assignments that are constant on each
bucket, returning the cheapest feasible one.  The search is equivalent
to solving the bucket-collapsed instance produced by
``bucketed_instance`` exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .caps import check_bits
from .lp import check_feasible_fractional, solve_lp, val
from .model import (
    Edge,
    Instance,
    Point,
    ZERO,
    ONE,
    brute_force_opt,
    check_solution,
    validate_instance,
)


def check_grid_fraction(eps) -> Fraction:
    eps = Fraction(eps)
    if not (0 < eps <= 1) or (1 / eps).denominator != 1:
        raise ValueError(f"eps must satisfy 0 < eps <= 1 with 1/eps integral, "
                         f"got {eps}")
    return eps


def _ceil_to_grid(a: Fraction, eps: Fraction) -> Fraction:
    q, r = divmod(a, eps)
    return (q + (1 if r else 0)) * eps


def perturb_point(q: int, pt: Point, eps: Fraction) -> Point:
    if q == 2:
        return ZERO if pt == 0 else _ceil_to_grid(pt, eps)
    rounded = [_ceil_to_grid(a, eps) for a in pt]
    kept = ZERO
    i = q - 1
    while i > 0 and kept + rounded[i] <= 1:
        kept += rounded[i]
        i -= 1
    return tuple([ZERO] * i + [ONE - kept] + rounded[i + 1:])


@dataclass
class PerturbedSolution:
    eps: Fraction
    x: list             # the input solution
    x_eps: list         # its snapped image
    bucket_values: list  # distinct snapped values, ascending
    bucket_of: list      # vertex -> bucket index


def perturb(inst: Instance, x: Sequence[Point], eps) -> PerturbedSolution:
    """Snap ``x`` onto the eps grid (x is assumed hull-feasible)."""
    eps = check_grid_fraction(eps)
    check_solution(inst, x)
    x_eps = [perturb_point(inst.q, pt, eps) for pt in x]
    bucket_values = sorted(set(x_eps))
    index = {v: i for i, v in enumerate(bucket_values)}
    bucket_of = [index[pt] for pt in x_eps]
    assert len(bucket_values) <= grid_size(inst.q, eps)
    return PerturbedSolution(eps, list(x), x_eps, bucket_values, bucket_of)


def grid_points(q: int, eps) -> list:
    """All snapped values: the eps grid inside the value domain."""
    eps = check_grid_fraction(eps)
    steps = int(1 / eps)
    if q == 2:
        return [eps * k for k in range(steps + 1)]
    points = set()

    def extend(suffix: tuple, total: Fraction) -> None:
        i = q - 1 - len(suffix)
        points.add((ZERO,) * i + (ONE - total,) + suffix)
        if i > 0:
            for k in range(int((1 - total) / eps) + 1):
                extend((eps * k,) + suffix, total + eps * k)

    extend((), ZERO)
    return sorted(points)


def grid_size(q: int, eps) -> int:
    return len(grid_points(q, eps))


def verify_perturbation(inst: Instance, x: Sequence[Point], eps) -> dict:
    """Exact report on one perturbation: feasibility and value increase."""
    eps = check_grid_fraction(eps)
    pert = perturb(inst, x, eps)
    before = val(inst, x)
    after = val(inst, pert.x_eps)
    bound = eps if inst.q == 2 else eps * inst.q * inst.q
    feasible_before = check_feasible_fractional(inst, x)
    feasible_after = check_feasible_fractional(inst, pert.x_eps)
    return {
        "eps": eps,
        "feasible_before": feasible_before,
        "feasible_after": feasible_after,
        "value_before": before,
        "value_after": after,
        "increase": after - before,
        "increase_bound": bound,
        "ok": ((not feasible_before or feasible_after)
               and after - before <= bound),
    }


@dataclass
class RoundResult:
    value: Fraction
    labels: tuple           # full assignment on the instance
    bucket_values: list     # ascending snapped values
    bucket_labels: tuple    # chosen label per bucket, same order
    perturbed: PerturbedSolution


def round_solution(inst: Instance, x: Sequence[Point], eps,
                   *, max_bits: int | None = None) -> RoundResult:
    """Cheapest feasible assignment that is constant on snapped buckets.

    Enumerates every labeling of the buckets (``q**m`` candidates,
    bounded by the ROUND cap), checks feasibility edge by edge on the
    original instance, and returns the minimum cost together with the
    lexicographically least witness in bucket order.
    """
    pert = perturb(inst, x, eps)
    m = len(pert.bucket_values)
    if max_bits is None:
        check_bits("ROUND", inst.q ** m, "bucket labeling space")
    elif inst.q ** m > (1 << max_bits):
        from .caps import CapExceeded

        raise CapExceeded(f"bucket labeling space {inst.q}^{m} exceeds "
                          f"2^{max_bits}")
    bucket_weight = [ZERO] * m
    for w, b in zip(inst.weights, pert.bucket_of):
        bucket_weight[b] += w
    edge_data = [
        (tuple(pert.bucket_of[v] for v in e.vertices), inst.predicate_of(e))
        for e in inst.edges
    ]
    best_cost = None
    best_z = None
    for z in itertools.product(range(inst.q), repeat=m):
        if not all(p.accepts(tuple(z[b] for b in bs)) for bs, p in edge_data):
            continue
        cost = sum((wb * zb for wb, zb in zip(bucket_weight, z) if zb), ZERO)
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_z = z
    assert best_cost is not None, "the all-top labeling is always feasible"
    labels = tuple(best_z[b] for b in pert.bucket_of)
    return RoundResult(best_cost, labels, pert.bucket_values, best_z, pert)


def bucketed_instance(inst: Instance, x: Sequence[Point], eps):
    """Collapse vertices with equal snapped value into one vertex.

    Returns ``(collapsed instance, bucket_of)``.  Bucket weights add up
    the member weights; edges are the set images of the original edges
    (duplicates collapse).  The optimum of the collapsed instance equals
    ``round_solution(inst, x, eps).value`` exactly.
    """
    pert = perturb(inst, x, eps)
    m = len(pert.bucket_values)
    weights = [ZERO] * m
    for w, b in zip(inst.weights, pert.bucket_of):
        weights[b] += w
    ids = tuple(_bucket_id(inst.q, v) for v in pert.bucket_values)
    edges = sorted(
        {
            (tuple(pert.bucket_of[v] for v in e.vertices), e.predicate)
            for e in inst.edges
        }
    )
    collapsed = Instance(
        inst.q,
        ids,
        tuple(weights),
        inst.predicates,
        tuple(Edge(verts, pidx) for verts, pidx in edges),
    )
    problems = validate_instance(collapsed)
    assert not problems, problems
    return collapsed, pert.bucket_of


def _bucket_id(q: int, value: Point) -> str:
    if q == 2:
        return f"{value.numerator}/{value.denominator}"
    return "(" + ",".join(f"{a.numerator}/{a.denominator}" for a in value) + ")"


def integrality_report(inst: Instance, eps, x: Sequence[Point] | None = None,
                       *, max_bits: int | None = None) -> dict:
    """Relaxation value, rounded value, and exact optimum side by side.

    ``x`` defaults to the solver's canonical basic optimum; pass an
    explicit optimal solution to study a different rounding seed.
    Ratios are None when their denominator is zero.
    """
    sol = solve_lp(inst)
    if x is None:
        x = sol.x
    rounded = round_solution(inst, x, eps, max_bits=max_bits)
    opt, witness = brute_force_opt(inst)
    return {
        "eps": check_grid_fraction(eps),
        "lp": sol.objective,
        "lp_x": list(x),
        "round": rounded.value,
        "round_labels": rounded.labels,
        "opt": opt,
        "opt_labels": witness,
        "round_over_opt": None if opt == 0 else rounded.value / opt,
        "opt_over_lp": None if sol.objective == 0 else opt / sol.objective,
    }
