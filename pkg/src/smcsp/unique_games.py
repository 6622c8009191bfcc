"""Two-prover projection games and their hypercube composition.

A game has left and right vertex sets, a label range [r], and weighted
edges each carrying a bijection pi on labels; an edge is satisfied when
the right label equals pi applied to the left label.  ``compose`` blows
a hypercube instance up along a game: each left vertex gets its own copy
of the hypercube instance, and every k-ary constraint is re-wired
through the label bijections of k (not necessarily distinct) game edges
meeting at a common right vertex.

``decode_labeling`` inverts the construction for q = 2: it reads a
selection of composed vertices as one averaged cube function per right
vertex, and labels each side by the most influential coordinate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .caps import check_bits
from .dictators import (DictInstance, dict_vertex_id, dictator_weight)
from .fourier import biased_fourier, point_of
from .model import Instance, assignment_cost, is_feasible, make_instance

ZERO = Fraction(0)


@dataclass(frozen=True)
class UgInstance:
    """Projection game; edges are (left, right, weight, bijection)."""

    r: int
    left: tuple   # left vertex ids
    right: tuple  # right vertex ids
    edges: tuple  # ((u_idx, v_idx, Fraction weight, perm tuple), ...)

    @property
    def n_left(self) -> int:
        return len(self.left)

    @property
    def n_right(self) -> int:
        return len(self.right)


def validate_ug(ug: UgInstance) -> list:
    """All structural problems, as strings; empty means well formed."""
    problems = []
    if not isinstance(ug.r, int) or ug.r < 1:
        problems.append(f"label range must be a positive integer, got {ug.r}")
        return problems
    if not ug.left or not ug.right:
        problems.append("both vertex sides must be nonempty")
    if len(set(ug.left)) != len(ug.left) or len(set(ug.right)) != len(ug.right):
        problems.append("duplicate vertex ids")
    if set(ug.left) & set(ug.right):
        problems.append("left and right ids overlap")
    identity = list(range(ug.r))
    total = ZERO
    for i, (u, v, wt, perm) in enumerate(ug.edges):
        if not 0 <= u < len(ug.left):
            problems.append(f"edge #{i}: left index {u} out of range")
        if not 0 <= v < len(ug.right):
            problems.append(f"edge #{i}: right index {v} out of range")
        if not isinstance(wt, Fraction) or wt < 0:
            problems.append(f"edge #{i}: weight must be a nonnegative "
                            f"rational, got {wt!r}")
        else:
            total += wt
        if sorted(perm) != identity:
            problems.append(f"edge #{i}: {perm} is not a bijection on "
                            f"0..{ug.r - 1}")
    if not ug.edges:
        problems.append("game has no edges")
    elif total != 1:
        problems.append(f"edge weights sum to {total}, expected 1")
    return problems


def edge_satisfied(ug: UgInstance, edge, labels: Mapping[str, int]) -> bool:
    u, v, _, perm = edge
    return labels[ug.right[v]] == perm[labels[ug.left[u]]]


def ug_satisfied_weight(ug: UgInstance, labels: Mapping[str, int]) -> Fraction:
    """Total weight of edges whose bijection maps left label to right."""
    for vid in itertools.chain(ug.left, ug.right):
        a = labels.get(vid)
        if not isinstance(a, int) or not 0 <= a < ug.r:
            raise ValueError(f"vertex {vid!r}: label must be in "
                             f"0..{ug.r - 1}, got {a!r}")
    return sum((wt for u, v, wt, perm in ug.edges
                if labels[ug.right[v]] == perm[labels[ug.left[u]]]), ZERO)


def ug_brute_force(ug: UgInstance, *, max_bits: int | None = None):
    """Maximum satisfied weight and its lexicographically least labeling."""
    ids = list(ug.left) + list(ug.right)
    space = ug.r ** len(ids)
    if max_bits is None:
        check_bits("UG", space, "game labeling space")
    elif space > (1 << max_bits):
        raise ValueError(f"game labeling space {space} exceeds 2^{max_bits}")
    best = None
    best_labels = None
    for combo in itertools.product(range(ug.r), repeat=len(ids)):
        labels = dict(zip(ids, combo))
        value = ug_satisfied_weight(ug, labels)
        if best is None or value > best:
            best, best_labels = value, labels
    return best, best_labels


def p_left(ug: UgInstance, u: int) -> Fraction:
    """Total weight of edges at a left vertex (a probability mass)."""
    return sum((wt for uu, _, wt, _ in ug.edges if uu == u), ZERO)


def p_right(ug: UgInstance, v: int) -> Fraction:
    return sum((wt for _, vv, wt, _ in ug.edges if vv == v), ZERO)


def incident_right(ug: UgInstance, v: int) -> list:
    """Edges at a right vertex, in input order."""
    return [e for e in ug.edges if e[1] == v]


def f_vertex_id(left_id: str, b: int, y: Sequence[int]) -> str:
    return f"{left_id}/{dict_vertex_id(b, y)}"


def compose(ug: UgInstance, D: DictInstance) -> Instance:
    """Product instance: one hypercube copy per left vertex, constraints
    transported through k-tuples of game edges sharing a right vertex.

    Vertex (u, b, y) weighs p_u * w_D(b, y) where p_u is the edge mass
    at u, so total weight stays 1.  For a source constraint on points
    (b_j, y_j) and game edges e_1..e_k at a common right vertex, the
    composed constraint joins (u_{e_j}, b_j, y_j o pi_{e_j}) where
    (y o pi)_t = y_{pi(t)}.
    """
    if D.r != ug.r:
        raise ValueError(f"label ranges differ: game has r={ug.r}, "
                         f"hypercubes have r={D.r}")
    problems = validate_ug(ug)
    if problems:
        raise ValueError("invalid game: " + "; ".join(problems))
    base = D.instance
    cube = len(base.vertex_ids)
    check_bits("UG", ug.n_left * cube, "composed vertex count")
    tuple_budget = 0
    degrees = [len(incident_right(ug, v)) for v in range(ug.n_right)]
    for edge in base.edges:
        k = len(edge.vertices)
        tuple_budget += sum(dg ** k for dg in degrees)
    check_bits("UG", tuple_budget, "composed constraint tuples")

    ids = [f"{uid}/{dvid}" for uid in ug.left for dvid in base.vertex_ids]
    masses = [p_left(ug, u) for u in range(ug.n_left)]
    weights = [masses[u] * w for u in range(ug.n_left) for w in base.weights]

    index_of = {pt: i for i, pt in enumerate(D.points)}

    def composed_vertex(u: int, b: int, y: tuple, perm: tuple) -> int:
        twisted = tuple(y[perm[t]] for t in range(ug.r))
        return u * cube + index_of[(b, twisted)]

    edge_set = set()
    for edge in base.edges:
        k = len(edge.vertices)
        points = [D.points[dv] for dv in edge.vertices]
        for v in range(ug.n_right):
            for game_edges in itertools.product(incident_right(ug, v),
                                                repeat=k):
                verts = tuple(
                    composed_vertex(game_edges[j][0], points[j][0],
                                    points[j][1], game_edges[j][3])
                    for j in range(k))
                edge_set.add((verts, edge.predicate))
    edges = sorted(edge_set)
    return make_instance(base.q, weights, base.predicates, edges, ids)


def completeness_solution(ug: UgInstance, labels: Mapping[str, int],
                          satisfied_left: Iterable[str], D: DictInstance,
                          F: Instance | None = None, *,
                          lp_value: Fraction | None = None):
    """Cheap feasible point of the composed instance from a game labeling.

    On copies of left vertices whose every edge the labeling satisfies,
    assign coordinate ``labels[u]``; elsewhere assign the top label.
    The resulting cost obeys the exact identity

        dictator_weight(D) * mass(satisfied) + (q-1) * mass(rest)

    and, when the generating relaxation value is supplied, the bound
    (lp + eps + (q-1) * delta) * mass(satisfied) + (q-1) * mass(rest).
    Returns (assignment, report).
    """
    if F is None:
        F = compose(ug, D)
    sat = set(satisfied_left)
    unknown = sat - set(ug.left)
    if unknown:
        raise ValueError(f"not left vertex ids: {sorted(unknown)}")
    for u, v, wt, perm in ug.edges:
        if ug.left[u] in sat and wt > 0 and not edge_satisfied(
                ug, (u, v, wt, perm), labels):
            raise ValueError(
                f"labeling misses edge ({ug.left[u]}, {ug.right[v]}) "
                "incident to a claimed-satisfied vertex")
    q = D.q
    cube = len(D.points)
    assignment = []
    for u, uid in enumerate(ug.left):
        if uid in sat:
            coord = labels[uid]
            assignment.extend(y[coord] for _, y in D.points)
        else:
            assignment.extend([q - 1] * cube)
    assignment = tuple(assignment)
    assert is_feasible(F, assignment)
    weight = assignment_cost(F, assignment)
    mass_sat = sum((p_left(ug, u) for u, uid in enumerate(ug.left)
                    if uid in sat), ZERO)
    mass_rest = 1 - mass_sat
    dw = dictator_weight(D)
    identity = dw * mass_sat + (q - 1) * mass_rest
    assert weight == identity, (weight, identity)
    report = {"weight": weight, "dictator_weight": dw,
              "mass_satisfied": mass_sat, "mass_rest": mass_rest,
              "feasible": True}
    if lp_value is not None:
        if D.eps is None:
            raise ValueError("bound check needs the generation grid step")
        bound = ((lp_value + D.eps + (q - 1) * D.delta) * mass_sat
                 + (q - 1) * mass_rest)
        assert weight <= bound, (weight, bound)
        report["bound"] = bound
        report["bound_ok"] = True
    return assignment, report


def decode_labeling(ug: UgInstance, D: DictInstance,
                    selection: Mapping[str, int], *, tau: float = 0.0,
                    d: int | None = None):
    """Game labeling read off a selection of composed vertices (q = 2).

    Per right vertex, the incident copies are averaged (through each
    edge's bijection, weighted by edge mass) into one function per
    hypercube; the right label is the coordinate of largest degree-d
    influence over all hypercubes, 0 if no influence clears tau.  Each
    left vertex pulls the label of its heaviest edge back through that
    edge's bijection.  Returns (labels, influence table).
    """
    if D.q != 2:
        raise ValueError("decoding is defined for q = 2 only")
    r = D.r
    if d is None:
        d = r
    size = 2 ** r
    labels = {}
    influence_table = {}
    for v, vid in enumerate(ug.right):
        incident = incident_right(ug, v)
        mass = sum((wt for _, _, wt, _ in incident), ZERO)
        per_cube = []
        for b in range(D.m):
            table = [0.0] * size
            for u, _, wt, perm in incident:
                if wt == 0:
                    continue
                coeff = wt / mass
                uid = ug.left[u]
                for mask in range(size):
                    y = point_of(mask, r)
                    twisted = tuple(y[perm[t]] for t in range(r))
                    sel = selection[f_vertex_id(uid, b, twisted)]
                    table[mask] += float(coeff) * (1 - sel)
            per_cube.append(table)
        per_i = [0.0] * r
        rows = []
        for b, table in enumerate(per_cube):
            p = float(D.tilde_values[b])
            if not 0.0 < p < 1.0:
                rows.append([0.0] * r)
                continue
            expansion = biased_fourier(table, p, exact=False)
            row = [expansion.degree_d_influence(i, d) for i in range(r)]
            rows.append(row)
            for i, inf in enumerate(row):
                per_i[i] = max(per_i[i], inf)
        influence_table[vid] = rows
        candidates = [i for i in range(r) if per_i[i] >= tau]
        labels[vid] = (min(candidates, key=lambda i: (-per_i[i], i))
                       if candidates else 0)
    for u, uid in enumerate(ug.left):
        incident = [e for e in ug.edges if e[0] == u]
        if not incident:
            labels[uid] = 0
            continue
        _, v, _, perm = max(incident, key=lambda e: e[2])
        labels[uid] = perm.index(labels[ug.right[v]])
    return labels, influence_table
