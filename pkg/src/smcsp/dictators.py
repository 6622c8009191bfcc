"""Hypercube-blowup instances whose cheap solutions are coordinates.

``generate_dict`` turns an instance plus a fractional solution into a
new instance on vertices (b, y): one hypercube [q]^r per distinct
solution value, weighted by a product measure tilted toward the top
label.  Every r-tuple of support atoms of the smoothed edge
distribution contributes one hyperedge, so the construction is a
deterministic enumeration rather than a sampler.

The key identities, asserted where cheap and tested everywhere:

- every coordinate function y -> y_i is feasible and costs exactly
  (1 - delta) * val(I, x) + delta * (q - 1);
- assignments constant on each hypercube correspond one-to-one to
  bucket labelings of the source instance, so their optimum equals the
  snap-and-enumerate rounding value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .caps import CapExceeded, check_bits
from .distributions import extract_edge_distribution, smooth
from .fourier import biased_fourier, mask_of
from .lp import check_feasible_fractional, val
from .model import (Instance, Point, point_distribution, point_value,
                    make_instance, assignment_cost, is_feasible,
                    brute_force_opt)
from .rounding import check_grid_fraction, perturb_point

ZERO = Fraction(0)
ONE = Fraction(1)


def bucket_map(x: Sequence[Point]):
    """Distinct solution values in first-occurrence order.

    Returns (m, values, bucket_of) where bucket_of[u] indexes values.
    """
    values = []
    index = {}
    bucket_of = []
    for pt in x:
        if pt not in index:
            index[pt] = len(values)
            values.append(pt)
        bucket_of.append(index[pt])
    return len(values), tuple(values), tuple(bucket_of)


def tilted_value(q: int, pt: Point, delta: Fraction) -> Point:
    """(1 - delta) * p + delta * (top label point)."""
    if q == 2:
        return (1 - delta) * pt + delta
    out = list((1 - delta) * a for a in pt)
    out[q - 1] += delta
    return tuple(out)


def cube_measure(q: int, tilde: Point, y: Sequence[int]) -> Fraction:
    """Product probability of the string y under the tilted value."""
    dist = point_distribution(q, tilde)
    prob = ONE
    for a in y:
        prob *= dist[a]
    return prob


def dict_vertex_id(b: int, y: Sequence[int]) -> str:
    return f"b{b}:y" + "".join(str(a) for a in y)


def parse_dict_vertex_id(vid: str):
    """Inverse of dict_vertex_id; raises ValueError on foreign ids."""
    head, sep, tail = vid.partition(":y")
    if not sep or not head.startswith("b") or not tail:
        raise ValueError(f"not a hypercube vertex id: {vid!r}")
    return int(head[1:]), tuple(int(c) for c in tail)


@dataclass(frozen=True)
class DictInstance:
    instance: Instance
    r: int
    delta: Fraction
    eps: Fraction | None
    bucket_values: tuple     # distinct solution values, first occurrence
    tilde_values: tuple      # tilted values, aligned with bucket_values
    bucket_weights: tuple    # total source weight per bucket
    bucket_of: tuple | None  # source vertex index -> bucket
    source_value: Fraction | None  # val of the generating pair
    points: tuple            # vertex index -> (b, y)

    @property
    def m(self) -> int:
        return len(self.bucket_values)

    @property
    def q(self) -> int:
        return self.instance.q

    def vertex_index(self, b: int, y: Sequence[int]) -> int:
        return b * self.q ** self.r + sum(
            a * self.q ** i for i, a in enumerate(reversed(y)))


def generate_dict(inst: Instance, x: Sequence[Point], r: int, delta,
                  eps=None) -> DictInstance:
    """Materialize the hypercube instance for (inst, x, r, delta).

    ``x`` must be hull-feasible; when ``eps`` is given, every entry must
    already sit on the eps-grid (the caller snaps first).
    """
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie strictly between 0 and 1, "
                         f"got {delta}")
    if r < 1:
        raise ValueError("r must be a positive integer")
    if eps is not None:
        eps = check_grid_fraction(eps)
        off = [inst.vertex_ids[u] for u, pt in enumerate(x)
               if perturb_point(inst.q, pt, eps) != pt]
        if off:
            raise ValueError(f"solution entries off the eps-grid: {off}")
    if not check_feasible_fractional(inst, x):
        raise ValueError("solution is not hull-feasible")

    q = inst.q
    m, values, bucket_of = bucket_map(x)
    check_bits("DICT", m * q ** r, "hypercube vertex count")
    bucket_weights = [ZERO] * m
    for u, w in enumerate(inst.weights):
        bucket_weights[bucket_of[u]] += w
    tilde = tuple(tilted_value(q, p, delta) for p in values)

    ids = []
    weights = []
    points = []
    for b in range(m):
        for y in itertools.product(range(q), repeat=r):
            ids.append(dict_vertex_id(b, y))
            weights.append(cube_measure(q, tilde[b], y) * bucket_weights[b])
            points.append((b, y))
    index = {pt: i for i, pt in enumerate(points)}

    edge_set = set()
    for e_idx, edge in enumerate(inst.edges):
        dist = smooth(extract_edge_distribution(inst, x, e_idx), delta)
        support = [atom for atom, _ in dist.atoms]
        check_bits("DICT", len(support) ** r,
                   f"support tuples of edge #{e_idx}")
        k = len(edge.vertices)
        for draws in itertools.product(support, repeat=r):
            verts = tuple(
                index[(bucket_of[edge.vertices[j]],
                       tuple(draws[t][j] for t in range(r)))]
                for j in range(k))
            edge_set.add((verts, edge.predicate))
    edges = sorted(edge_set)

    out = make_instance(q, weights, inst.predicates, edges, ids)
    return DictInstance(out, r, delta, eps, values, tilde,
                        tuple(bucket_weights), bucket_of, val(inst, x),
                        tuple(points))


def dictator_assignment(D: DictInstance, i: int) -> tuple:
    """The labeling (b, y) -> y_i."""
    if not 0 <= i < D.r:
        raise ValueError(f"coordinate {i} out of range for r={D.r}")
    return tuple(y[i] for _, y in D.points)


def dictator_weight(D: DictInstance) -> Fraction:
    """Exact cost shared by all r coordinate labelings."""
    return sum((w * point_value(D.q, t)
                for w, t in zip(D.bucket_weights, D.tilde_values)), ZERO)


def completeness_check(D: DictInstance, inst: Instance | None = None,
                       x: Sequence[Point] | None = None) -> dict:
    """Verify that every coordinate labeling is feasible and has the
    predicted exact cost; returns the per-coordinate report."""
    value = D.source_value
    if inst is not None and x is not None:
        recomputed = val(inst, x)
        if recomputed != value:
            raise ValueError(f"instance/solution pair has value "
                             f"{recomputed}, expected {value}")
    expected = (1 - D.delta) * value + D.delta * (D.q - 1)
    assert dictator_weight(D) == expected
    costs = []
    for i in range(D.r):
        labels = dictator_assignment(D, i)
        assert is_feasible(D.instance, labels), \
            f"coordinate labeling {i} violates a constraint"
        cost = assignment_cost(D.instance, labels)
        assert cost == expected, (i, cost, expected)
        costs.append(cost)
    bound = value + D.delta * (D.q - 1)
    assert expected <= bound
    return {"r": D.r, "delta": D.delta, "value": value,
            "dictator_cost": expected, "costs": costs, "bound": bound,
            "feasible": True}


# ---------------------------------------------------------------------------
# q = 2 subset machinery
# ---------------------------------------------------------------------------

def _require_boolean(D: DictInstance) -> None:
    if D.q != 2:
        raise ValueError("subset analysis is defined for q = 2 only")


def cube_complement_table(D: DictInstance, labels: Sequence[int],
                          b: int) -> list:
    """Truth table (mask-indexed) of the indicator of the complement of
    the selection within hypercube b."""
    _require_boolean(D)
    base = b * 2 ** D.r
    table = [0] * 2 ** D.r
    for offset in range(2 ** D.r):
        _, y = D.points[base + offset]
        table[mask_of(y)] = 1 - labels[base + offset]
    return table


def extract_TJ(D: DictInstance, labels: Sequence[int]) -> dict:
    """Snap a selection to the union of its almost-covered hypercubes.

    A hypercube joins J when the tilted measure of its unselected part
    is at most delta.  The weight bound w(T_J) <= w(S) + delta holds for
    every selection and is asserted; feasibility of T_J is only
    reported, with a violated edge as witness when it fails.
    """
    _require_boolean(D)
    delta = D.delta
    J = []
    outside = []
    for b in range(D.m):
        table = cube_complement_table(D, labels, b)
        mass = sum((cube_measure(2, D.tilde_values[b], y)
                    for y in itertools.product((0, 1), repeat=D.r)
                    if table[mask_of(y)]), ZERO)
        outside.append(mass)
        if mass <= delta:
            J.append(b)
    selected = set(J)
    tj_labels = tuple(1 if b in selected else 0 for b, _ in D.points)
    w_s = assignment_cost(D.instance, labels)
    w_tj = assignment_cost(D.instance, tj_labels)
    assert w_tj <= w_s + delta, (w_tj, w_s, delta)
    violated = None
    for edge in D.instance.edges:
        if not D.instance.predicates[edge.predicate].accepts(
                tuple(tj_labels[v] for v in edge.vertices)):
            violated = tuple(D.instance.vertex_ids[v] for v in edge.vertices)
            break
    return {"J": tuple(J), "labels": tj_labels, "outside_mass": outside,
            "weight_S": w_s, "weight_TJ": w_tj,
            "bound_ok": True, "feasible": violated is None,
            "violated_edge": violated}


def bucket_constant_opt(D: DictInstance, *, max_bits: int | None = None):
    """Cheapest feasible labeling that is constant on every hypercube.

    Mirrors the snap-and-enumerate rounding search on the source
    instance; returns (value, per-bucket labels).
    """
    if max_bits is None:
        check_bits("ROUND", D.q ** D.m, "hypercube-constant labelings")
    elif D.q ** D.m > (1 << max_bits):
        raise CapExceeded(
            f"hypercube-constant space {D.q}^{D.m} exceeds 2^{max_bits}")
    best = None
    best_z = None
    for z in itertools.product(range(D.q), repeat=D.m):
        labels = tuple(z[b] for b, _ in D.points)
        if not is_feasible(D.instance, labels):
            continue
        cost = sum((zb * wb for zb, wb in zip(z, D.bucket_weights)), ZERO)
        if best is None or cost < best:
            best, best_z = cost, z
    assert best is not None, "the all-top labeling is always feasible"
    return best, best_z


def dict_opt(D: DictInstance, *, max_bits: int | None = None):
    """Exhaustive optimum over all labelings (tiny instances only)."""
    return brute_force_opt(D.instance, max_bits=max_bits)


def pseudo_random_check(D: DictInstance, labels: Sequence[int], tau,
                        d: int) -> dict:
    """Largest degree-d influence over all hypercubes and coordinates.

    The verdict is True when every influence is at most tau; all
    influences are exact rationals.
    """
    _require_boolean(D)
    tau = Fraction(tau)
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    worst = ZERO
    argmax = None
    table_out = []
    for b in range(D.m):
        tilde = D.tilde_values[b]
        row = []
        if 0 < tilde < 1:
            expansion = biased_fourier(cube_complement_table(D, labels, b),
                                       tilde)
            for i in range(D.r):
                inf = expansion.degree_d_influence(i, d)
                row.append(inf)
                if inf > worst:
                    worst, argmax = inf, (b, i)
        else:
            # degenerate tilt: the cube measure is a point mass and
            # every influence vanishes
            row = [ZERO] * D.r
        table_out.append(row)
    return {"tau": tau, "d": d, "max_influence": worst, "argmax": argmax,
            "pseudo_random": worst <= tau, "influences": table_out}


# ---------------------------------------------------------------------------
# reconstruction from a serialized instance
# ---------------------------------------------------------------------------

def dict_view(inst: Instance) -> DictInstance:
    """Rebuild the hypercube structure of a generated instance.

    Vertex ids carry (b, y); per-cube measures are recovered from the
    weights, so the result supports decoding and subset analysis but
    has no generation parameters (delta, eps, source value).
    """
    points = tuple(parse_dict_vertex_id(vid) for vid in inst.vertex_ids)
    if not points:
        raise ValueError("instance has no vertices")
    r = len(points[0][1])
    m = max(b for b, _ in points) + 1
    expected = [(b, y) for b in range(m)
                for y in itertools.product(range(inst.q), repeat=r)]
    if list(points) != expected:
        raise ValueError("vertex ids do not enumerate full hypercubes "
                         "in canonical order")
    cube = inst.q ** r
    bucket_weights = []
    tilde = []
    for b in range(m):
        block = inst.weights[b * cube: (b + 1) * cube]
        w_b = sum(block, ZERO)
        bucket_weights.append(w_b)
        if w_b == 0:
            raise ValueError(f"hypercube {b} has zero weight; its "
                             "measure cannot be recovered")
        margin = [ZERO] * inst.q
        for (bb, y), w in zip(points[b * cube: (b + 1) * cube], block):
            margin[y[0]] += w / w_b
        tilde.append(margin[1] if inst.q == 2 else tuple(margin))
    return DictInstance(inst, r, None, None, (None,) * m, tuple(tilde),
                        tuple(bucket_weights), None, None, points)
