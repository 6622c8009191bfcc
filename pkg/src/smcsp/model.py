"""Core object model: weighted monotone constraint instances.

An instance consists of weighted vertices (weights are exact rationals
summing to one), an ordered alphabet ``{0, ..., q-1}``, and hyperedges.
Each hyperedge carries a predicate whose accepting set is upward closed
in the coordinatewise order and is stored by its minimal elements.  An
assignment maps every vertex to a label; it is feasible when every edge
tuple is accepted, and its cost is the weight-average of its labels.

Fractional relaxations assign each vertex a *point*: for ``q == 2`` a
single rational in ``[0, 1]`` (the mass on label 1), for ``q > 2`` a
rational distribution over the alphabet.  Helpers near the bottom of
this module convert between the two views.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .caps import CapExceeded, check_bits, check_count

Point = Union[Fraction, tuple]  # scalar for q == 2, length-q tuple for q > 2

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Predicate:
    """Upward-closed accepting set over tuples in ``{0..q-1}**arity``.

    ``minimal`` holds the minimal accepted tuples (a nonempty antichain);
    a tuple is accepted iff it dominates one of them coordinatewise.
    """

    name: str
    arity: int
    q: int
    minimal: tuple

    def accepts(self, labels: Sequence[int]) -> bool:
        if len(labels) != self.arity:
            raise ValueError(
                f"predicate {self.name}: tuple of length {len(labels)}, "
                f"arity is {self.arity}"
            )
        return any(
            all(labels[j] >= m[j] for j in range(self.arity)) for m in self.minimal
        )

    def validate(self) -> list:
        problems = []
        if not self.name:
            problems.append("predicate with empty name")
        if self.arity < 1:
            problems.append(f"predicate {self.name}: arity must be >= 1")
        if not self.minimal:
            problems.append(f"predicate {self.name}: empty minimal set")
        for m in self.minimal:
            if len(m) != self.arity:
                problems.append(
                    f"predicate {self.name}: minimal element {m} has wrong length"
                )
            elif not all(isinstance(a, int) and 0 <= a < self.q for a in m):
                problems.append(
                    f"predicate {self.name}: minimal element {m} outside alphabet"
                )
        for m1, m2 in itertools.combinations(self.minimal, 2):
            if len(m1) == len(m2) == self.arity:
                if all(a <= b for a, b in zip(m1, m2)) or all(
                    a >= b for a, b in zip(m1, m2)
                ):
                    problems.append(
                        f"predicate {self.name}: {m1} and {m2} are comparable "
                        "(minimal set must be an antichain)"
                    )
        return problems


_CLOSURE_CACHE: dict = {}


def upward_closure(pred: Predicate) -> tuple:
    """Materialize the full accepting set of ``pred``, sorted.

    Enumerates all ``q**arity`` tuples, so it is guarded by the EXPAND cap.
    """
    key = (pred.q, pred.arity, pred.minimal)
    hit = _CLOSURE_CACHE.get(key)
    if hit is not None:
        return hit
    check_count("EXPAND", pred.q ** pred.arity, f"accepting set of {pred.name}")
    accepted = tuple(
        t
        for t in itertools.product(range(pred.q), repeat=pred.arity)
        if pred.accepts(t)
    )
    _CLOSURE_CACHE[key] = accepted
    return accepted


def covering_predicate(arity: int, name: str = "") -> Predicate:
    """The boolean 'at least one 1' predicate (minimal set = unit tuples)."""
    minimal = tuple(sorted(
        tuple(1 if j == i else 0 for j in range(arity)) for i in range(arity)
    ))
    return Predicate(name or f"cover{arity}", arity, 2, minimal)


def is_covering_predicate(pred: Predicate) -> bool:
    if pred.q != 2:
        return False
    expected = {
        tuple(1 if j == i else 0 for j in range(pred.arity))
        for i in range(pred.arity)
    }
    return set(pred.minimal) == expected


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    vertices: tuple  # vertex indices; repeats are allowed
    predicate: int   # index into Instance.predicates


@dataclass(frozen=True)
class Instance:
    q: int
    vertex_ids: tuple
    weights: tuple       # Fractions, nonnegative, summing to exactly 1
    predicates: tuple    # Predicate objects
    edges: tuple         # Edge objects

    @property
    def n(self) -> int:
        return len(self.vertex_ids)

    def predicate_of(self, edge: Edge) -> Predicate:
        return self.predicates[edge.predicate]

    def vertex_index(self, vid: str) -> int:
        try:
            return self.vertex_ids.index(vid)
        except ValueError as exc:
            raise KeyError(f"unknown vertex id {vid!r}") from exc


def make_instance(
    q: int,
    weights: Sequence,
    predicates: Sequence[Predicate],
    edges: Sequence,
    vertex_ids: Sequence | None = None,
) -> Instance:
    """Build an Instance from loose data and validate it."""
    weights = tuple(Fraction(w) for w in weights)
    if vertex_ids is None:
        vertex_ids = tuple(f"v{i}" for i in range(len(weights)))
    else:
        vertex_ids = tuple(vertex_ids)
    norm_edges = []
    for e in edges:
        if isinstance(e, Edge):
            norm_edges.append(e)
        else:
            verts, pidx = e
            norm_edges.append(Edge(tuple(verts), pidx))
    inst = Instance(q, vertex_ids, weights, tuple(predicates), tuple(norm_edges))
    problems = validate_instance(inst)
    if problems:
        raise ValueError("invalid instance: " + "; ".join(problems))
    return inst


def validate_instance(inst: Instance) -> list:
    """Return a list of violated structural invariants (empty when valid)."""
    problems = []
    if inst.q < 2:
        problems.append(f"alphabet size q={inst.q}, must be >= 2")
    if len(inst.vertex_ids) != len(inst.weights):
        problems.append("vertex id list and weight list differ in length")
    if len(inst.vertex_ids) == 0:
        problems.append("instance has no vertices")
    if len(set(inst.vertex_ids)) != len(inst.vertex_ids):
        problems.append("vertex ids are not unique")
    if any(not vid for vid in inst.vertex_ids):
        problems.append("empty vertex id")
    for vid, w in zip(inst.vertex_ids, inst.weights):
        if not isinstance(w, Fraction):
            problems.append(f"weight of {vid} is not an exact rational")
        elif w < 0:
            problems.append(f"weight of {vid} is negative")
    total = sum(inst.weights, ZERO)
    if total != 1:
        problems.append(f"weights sum to {total}, expected exactly 1")
    names = [p.name for p in inst.predicates]
    if len(set(names)) != len(names):
        problems.append("predicate names are not unique")
    for p in inst.predicates:
        problems.extend(p.validate())
        if p.q != inst.q:
            problems.append(
                f"predicate {p.name} has alphabet {p.q}, instance has {inst.q}"
            )
    for i, e in enumerate(inst.edges):
        if not (0 <= e.predicate < len(inst.predicates)):
            problems.append(f"edge {i}: predicate index {e.predicate} out of range")
            continue
        pred = inst.predicates[e.predicate]
        if len(e.vertices) != pred.arity:
            problems.append(
                f"edge {i}: {len(e.vertices)} vertices but predicate "
                f"{pred.name} has arity {pred.arity}"
            )
        for v in e.vertices:
            if not (0 <= v < inst.n):
                problems.append(f"edge {i}: vertex index {v} out of range")
    return problems


# ---------------------------------------------------------------------------
# assignments
# ---------------------------------------------------------------------------

def validate_assignment(inst: Instance, labels: Sequence[int]) -> None:
    if len(labels) != inst.n:
        raise ValueError(f"assignment length {len(labels)} != n = {inst.n}")
    for v, a in enumerate(labels):
        if not (0 <= a < inst.q):
            raise ValueError(f"label {a} of vertex {v} outside alphabet")


def assignment_cost(inst: Instance, labels: Sequence[int]) -> Fraction:
    """Weighted average label: sum_v w_v * labels[v]."""
    validate_assignment(inst, labels)
    return sum(
        (w * a for w, a in zip(inst.weights, labels) if a), ZERO
    )


def is_feasible(inst: Instance, labels: Sequence[int]) -> bool:
    validate_assignment(inst, labels)
    for e in inst.edges:
        pred = inst.predicate_of(e)
        if not pred.accepts(tuple(labels[v] for v in e.vertices)):
            return False
    return True


def _brute_force_boolean(inst: Instance, scale: int, int_weights: list):
    """Vectorized boolean search over all 2**n assignments.

    Feasibility per edge goes through a lookup table on the edge's local
    bit pattern; costs are exact integers (weights times their common
    denominator), so no floating point is involved.
    """
    n = inst.n
    total = 1 << n
    masks = np.arange(total, dtype=np.int64)
    feasible = np.ones(total, dtype=bool)
    for e in inst.edges:
        pred = inst.predicate_of(e)
        accepted = upward_closure(pred)
        table = np.zeros(1 << pred.arity, dtype=bool)
        for t in accepted:
            idx = 0
            for j, a in enumerate(t):
                idx |= a << j
            table[idx] = True
        local = np.zeros(total, dtype=np.int64)
        for j, v in enumerate(e.vertices):
            local |= ((masks >> v) & 1) << j
        feasible &= table[local]
    if not feasible.any():
        raise RuntimeError("no feasible assignment (upward-closed predicates "
                           "should always accept the all-top assignment)")
    cost = np.zeros(total, dtype=np.int64)
    for v in range(n):
        cost += ((masks >> v) & 1) * int_weights[v]
    cost = np.where(feasible, cost, np.iinfo(np.int64).max)
    best = int(cost.min())
    candidates = np.nonzero(cost == best)[0]
    # lexicographically smallest label tuple, vertex 0 most significant
    best_labels = min(
        tuple((int(m) >> v) & 1 for v in range(n)) for m in candidates
    )
    return Fraction(best, scale), best_labels


def brute_force_opt(inst: Instance, *, max_bits: int | None = None):
    """Exhaustive optimum: returns ``(opt value, optimal assignment)``.

    Ties are broken by the lexicographically smallest assignment.  The
    search space ``q**n`` is bounded by the ENUM cap (log2 budget).
    """
    n, q = inst.n, inst.q
    if max_bits is None:
        check_bits("ENUM", q ** n, "brute-force assignment space")
    elif q ** n > (1 << max_bits):
        raise CapExceeded(f"brute-force space {q}^{n} exceeds 2^{max_bits}")

    if q == 2 and n > 14:
        scale = 1
        for w in inst.weights:
            scale = scale * w.denominator // math.gcd(scale, w.denominator)
        if scale < (1 << 60):
            int_weights = [int(w * scale) for w in inst.weights]
            return _brute_force_boolean(inst, scale, int_weights)

    edge_data = [
        (e.vertices, set(upward_closure(inst.predicate_of(e)))) for e in inst.edges
    ]
    best_cost = None
    best_labels = None
    for labels in itertools.product(range(q), repeat=n):
        ok = True
        for verts, accepted in edge_data:
            if tuple(labels[v] for v in verts) not in accepted:
                ok = False
                break
        if not ok:
            continue
        cost = sum((w * a for w, a in zip(inst.weights, labels) if a), ZERO)
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_labels = labels
    if best_cost is None:
        raise RuntimeError("no feasible assignment (upward-closed predicates "
                           "should always accept the all-top assignment)")
    return best_cost, best_labels


# ---------------------------------------------------------------------------
# fractional points
# ---------------------------------------------------------------------------

def check_point(q: int, pt: Point) -> None:
    """Validate the shape of one vertex value of a fractional solution."""
    if q == 2:
        if not isinstance(pt, Fraction):
            raise ValueError(f"q=2 expects scalar rationals, got {pt!r}")
    else:
        if not isinstance(pt, tuple) or len(pt) != q:
            raise ValueError(f"q={q} expects length-{q} tuples, got {pt!r}")
        if any(not isinstance(a, Fraction) for a in pt):
            raise ValueError(f"distribution {pt} has non-rational entries")


def point_in_domain(q: int, pt: Point) -> bool:
    """Box membership for scalars, simplex membership for distributions."""
    if q == 2:
        return 0 <= pt <= 1
    return all(a >= 0 for a in pt) and sum(pt, ZERO) == 1


def check_solution(inst: Instance, x: Sequence[Point]) -> None:
    if len(x) != inst.n:
        raise ValueError(f"solution length {len(x)} != n = {inst.n}")
    for pt in x:
        check_point(inst.q, pt)


def point_value(q: int, pt: Point) -> Fraction:
    """Expected label of a point (identity for the scalar view)."""
    if q == 2:
        return pt
    return sum((Fraction(i) * a for i, a in enumerate(pt) if i), ZERO)


def point_distribution(q: int, pt: Point) -> tuple:
    """The point as a label distribution (scalar x becomes (1-x, x))."""
    if q == 2:
        return (ONE - pt, pt)
    return pt


def label_point(q: int, a: int) -> Point:
    """The integral point concentrated on label ``a``."""
    if q == 2:
        return Fraction(a)
    return tuple(ONE if i == a else ZERO for i in range(q))


def top_point(q: int) -> Point:
    return label_point(q, q - 1)


def mix_points(q: int, points: Sequence[Point], coeffs: Sequence[Fraction]) -> Point:
    """Convex combination of points (exact)."""
    if q == 2:
        return sum((c * p for c, p in zip(coeffs, points)), ZERO)
    return tuple(
        sum((c * p[i] for c, p in zip(coeffs, points)), ZERO) for i in range(q)
    )


def solution_from_assignments(
    inst: Instance, assignments: Sequence[Sequence[int]], coeffs: Sequence[Fraction]
) -> list:
    """Fractional solution given by a convex mix of integral assignments.

    Always feasible for the hull relaxation: per edge, the mix of the
    accepted integral tuples is its own decomposition certificate.
    """
    if sum(coeffs, ZERO) != 1 or any(c < 0 for c in coeffs):
        raise ValueError("coefficients must be a convex combination")
    return [
        mix_points(
            inst.q,
            [label_point(inst.q, labels[v]) for labels in assignments],
            coeffs,
        )
        for v in range(inst.n)
    ]
