"""JSON file formats.

Instance document::

    {
      "q": 2,
      "vertices":   [{"id": "u", "weight": "1/2"}, ...],
      "predicates": [{"name": "cover2", "arity": 2, "minimal": [[0,1],[1,0]]}],
      "edges":      [{"vertices": ["u","v"], "predicate": "cover2"}]
    }

Unique-games document::

    {
      "r": 3,
      "left":  ["a", "b"],
      "right": ["x"],
      "edges": [{"u": "a", "v": "x", "weight": "1/2", "pi": [2, 1, 3]}]
    }

Rationals are strings ``"num/den"`` in lowest terms with a positive
denominator; plain JSON integers are accepted as shorthand for ``n/1``.
Permutations are written 1-indexed on the wire (``pi[j]`` is the image
of ``j``) and converted to 0-based tuples internally.  Serialization is
canonical, so parse -> serialize -> parse is a fixed point.  A top-level
``"meta"`` key is tolerated and ignored in both documents.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Sequence

from .model import Edge, Instance, Point, Predicate, validate_instance
from .unique_games import UgInstance, validate_ug


class ParseError(ValueError):
    """A document violates the file format."""


def parse_rational(value, what: str = "value") -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{what}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"{what}: expected 'num/den' string or integer, "
                         f"got {value!r}")
    parts = value.split("/")
    if len(parts) != 2:
        raise ParseError(f"{what}: malformed rational {value!r}")
    try:
        num, den = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ParseError(f"{what}: malformed rational {value!r}") from exc
    if den <= 0:
        raise ParseError(f"{what}: denominator must be positive in {value!r}")
    if math.gcd(abs(num), den) != 1:
        raise ParseError(f"{what}: non-canonical rational {value!r} "
                         "(must be in lowest terms)")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _expect_keys(obj: dict, required: set, optional: set, what: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected a JSON object")
    keys = set(obj)
    missing = required - keys
    if missing:
        raise ParseError(f"{what}: missing keys {sorted(missing)}")
    unknown = keys - required - optional
    if unknown:
        raise ParseError(f"{what}: unknown keys {sorted(unknown)}")


def _load(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

def parse_instance(text: str) -> Instance:
    doc = _load(text)
    _expect_keys(doc, {"q", "vertices", "predicates", "edges"}, {"meta"},
                 "instance")
    q = doc["q"]
    if not isinstance(q, int) or q < 2:
        raise ParseError(f"q must be an integer >= 2, got {q!r}")

    ids, weights = [], []
    for i, v in enumerate(doc["vertices"]):
        _expect_keys(v, {"id", "weight"}, set(), f"vertex #{i}")
        if not isinstance(v["id"], str) or not v["id"]:
            raise ParseError(f"vertex #{i}: id must be a nonempty string")
        ids.append(v["id"])
        weights.append(parse_rational(v["weight"], f"weight of {v['id']}"))
    if len(set(ids)) != len(ids):
        raise ParseError("duplicate vertex ids")

    predicates = []
    for i, p in enumerate(doc["predicates"]):
        _expect_keys(p, {"name", "arity", "minimal"}, set(), f"predicate #{i}")
        name, arity = p["name"], p["arity"]
        if not isinstance(name, str) or not name:
            raise ParseError(f"predicate #{i}: name must be a nonempty string")
        if not isinstance(arity, int) or arity < 1:
            raise ParseError(f"predicate {name}: arity must be an integer >= 1")
        minimal = []
        for m in p["minimal"]:
            if (not isinstance(m, list) or len(m) != arity
                    or not all(isinstance(a, int) for a in m)):
                raise ParseError(f"predicate {name}: bad minimal element {m!r} "
                                 f"(expected {arity} integers)")
            if not all(0 <= a < q for a in m):
                raise ParseError(f"predicate {name}: minimal element {m} "
                                 f"outside alphabet [0, {q})")
            minimal.append(tuple(m))
        predicates.append(Predicate(name, arity, q, tuple(sorted(set(minimal)))))
    by_name = {p.name: i for i, p in enumerate(predicates)}
    if len(by_name) != len(predicates):
        raise ParseError("duplicate predicate names")

    edges = []
    index_of = {vid: i for i, vid in enumerate(ids)}
    for i, e in enumerate(doc["edges"]):
        _expect_keys(e, {"vertices", "predicate"}, set(), f"edge #{i}")
        pname = e["predicate"]
        if pname not in by_name:
            raise ParseError(f"edge #{i}: unknown predicate name {pname!r}")
        pidx = by_name[pname]
        verts = []
        for vid in e["vertices"]:
            if vid not in index_of:
                raise ParseError(f"edge #{i}: unknown vertex id {vid!r}")
            verts.append(index_of[vid])
        if len(verts) != predicates[pidx].arity:
            raise ParseError(
                f"edge #{i}: {len(verts)} vertices but predicate {pname} "
                f"has arity {predicates[pidx].arity}"
            )
        edges.append(Edge(tuple(verts), pidx))

    inst = Instance(q, tuple(ids), tuple(weights), tuple(predicates),
                    tuple(edges))
    problems = validate_instance(inst)
    if problems:
        raise ParseError("invalid instance: " + "; ".join(problems))
    return inst


def serialize_instance(inst: Instance) -> str:
    doc = {
        "q": inst.q,
        "vertices": [
            {"id": vid, "weight": format_rational(w)}
            for vid, w in zip(inst.vertex_ids, inst.weights)
        ],
        "predicates": [
            {"name": p.name, "arity": p.arity,
             "minimal": [list(m) for m in sorted(p.minimal)]}
            for p in inst.predicates
        ],
        "edges": [
            {"vertices": [inst.vertex_ids[v] for v in e.vertices],
             "predicate": inst.predicates[e.predicate].name}
            for e in inst.edges
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# fractional solutions and assignments
# ---------------------------------------------------------------------------

def parse_solution(text: str, inst: Instance) -> list:
    """Fractional solution document ``{"x": {vertex-id: value}}``.

    Values are rationals for ``q == 2`` and length-q rational arrays
    otherwise.
    """
    doc = _load(text)
    _expect_keys(doc, {"x"}, {"meta"}, "solution")
    table = doc["x"]
    if not isinstance(table, dict):
        raise ParseError("solution: 'x' must be an object")
    unknown = set(table) - set(inst.vertex_ids)
    if unknown:
        raise ParseError(f"solution: unknown vertex ids {sorted(unknown)}")
    missing = set(inst.vertex_ids) - set(table)
    if missing:
        raise ParseError(f"solution: missing vertex ids {sorted(missing)}")
    x: list[Point] = []
    for vid in inst.vertex_ids:
        raw = table[vid]
        if inst.q == 2:
            x.append(parse_rational(raw, f"x[{vid}]"))
        else:
            if not isinstance(raw, list) or len(raw) != inst.q:
                raise ParseError(f"x[{vid}]: expected a length-{inst.q} array")
            x.append(tuple(parse_rational(a, f"x[{vid}]") for a in raw))
    return x


def serialize_solution(inst: Instance, x: Sequence[Point]) -> str:
    table = {}
    for vid, pt in zip(inst.vertex_ids, x):
        if inst.q == 2:
            table[vid] = format_rational(pt)
        else:
            table[vid] = [format_rational(a) for a in pt]
    return json.dumps({"x": table}, indent=2) + "\n"


def parse_assignment(text: str, inst: Instance) -> tuple:
    """Assignment document ``{"labels": {vertex-id: label}}``."""
    doc = _load(text)
    _expect_keys(doc, {"labels"}, {"meta"}, "assignment")
    table = doc["labels"]
    if not isinstance(table, dict):
        raise ParseError("assignment: 'labels' must be an object")
    unknown = set(table) - set(inst.vertex_ids)
    if unknown:
        raise ParseError(f"assignment: unknown vertex ids {sorted(unknown)}")
    missing = set(inst.vertex_ids) - set(table)
    if missing:
        raise ParseError(f"assignment: missing vertex ids {sorted(missing)}")
    labels = []
    for vid in inst.vertex_ids:
        a = table[vid]
        if not isinstance(a, int) or not (0 <= a < inst.q):
            raise ParseError(f"label of {vid}: expected an integer in "
                             f"[0, {inst.q}), got {a!r}")
        labels.append(a)
    return tuple(labels)


def serialize_assignment(inst: Instance, labels: Sequence[int]) -> str:
    table = {vid: int(a) for vid, a in zip(inst.vertex_ids, labels)}
    return json.dumps({"labels": table}, indent=2) + "\n"


# ---------------------------------------------------------------------------
# unique games
# ---------------------------------------------------------------------------

def parse_ug(text: str) -> UgInstance:
    doc = _load(text)
    _expect_keys(doc, {"r", "left", "right", "edges"}, {"meta"}, "unique game")
    r = doc["r"]
    if not isinstance(r, int) or r < 1:
        raise ParseError(f"r must be an integer >= 1, got {r!r}")
    left = doc["left"]
    right = doc["right"]
    for side, name in ((left, "left"), (right, "right")):
        if (not isinstance(side, list) or not side
                or not all(isinstance(s, str) and s for s in side)):
            raise ParseError(f"{name}: expected a nonempty list of ids")
    if set(left) & set(right):
        raise ParseError("left and right vertex ids overlap")
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise ParseError("duplicate unique-game vertex ids")
    left_of = {vid: i for i, vid in enumerate(left)}
    right_of = {vid: i for i, vid in enumerate(right)}
    edges = []
    for i, e in enumerate(doc["edges"]):
        _expect_keys(e, {"u", "v", "weight", "pi"}, set(), f"ug edge #{i}")
        if e["u"] not in left_of:
            raise ParseError(f"ug edge #{i}: unknown left id {e['u']!r}")
        if e["v"] not in right_of:
            raise ParseError(f"ug edge #{i}: unknown right id {e['v']!r}")
        wt = parse_rational(e["weight"], f"ug edge #{i} weight")
        pi = e["pi"]
        if (not isinstance(pi, list) or len(pi) != r
                or sorted(pi) != list(range(1, r + 1))):
            raise ParseError(f"ug edge #{i}: pi must be a 1-indexed "
                             f"permutation of 1..{r}")
        perm = tuple(a - 1 for a in pi)
        edges.append((left_of[e["u"]], right_of[e["v"]], wt, perm))
    ug = UgInstance(r, tuple(left), tuple(right), tuple(edges))
    problems = validate_ug(ug)
    if problems:
        raise ParseError("invalid unique game: " + "; ".join(problems))
    return ug


def serialize_ug(ug: UgInstance) -> str:
    doc = {
        "r": ug.r,
        "left": list(ug.left),
        "right": list(ug.right),
        "edges": [
            {"u": ug.left[u], "v": ug.right[v],
             "weight": format_rational(wt),
             "pi": [a + 1 for a in perm]}
            for (u, v, wt, perm) in ug.edges
        ],
    }
    return json.dumps(doc, indent=2) + "\n"
