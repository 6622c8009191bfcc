"""Hull relaxation of a monotone constraint instance.

The relaxation has one value variable per vertex (``q == 2``) or one
simplex block of q coordinates per vertex (``q > 2``), plus one
nonnegative lambda variable per accepted tuple of each edge.  Rows force
each edge's vertex values to equal the lambda-mixture of its accepted
tuples and each edge's lambdas to sum to one, so the vertex values of
any feasible point lie in the convex hull of the edge's accepting set.
The objective is the weighted expected label.

Everything is exact; the solver returns a deterministic basic optimum
(see :mod:`smcsp.simplex`).  ``standard_hvc_lp`` provides the classical
covering relaxation for boolean covering instances as an independent
reference point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import simplex
from .model import (
    Edge,
    Instance,
    Point,
    ZERO,
    ONE,
    check_solution,
    is_covering_predicate,
    point_in_domain,
    point_value,
    upward_closure,
)


@dataclass
class LpProblem:
    """Equality-form LP: min c.z with A z = b, z >= 0."""

    instance: Instance
    col_names: list
    c: list
    A: list
    b: list
    x_cols: list      # per vertex: column index (q=2) or list of q indices
    edge_atoms: list  # per edge: (first lambda column, accepted tuples)

    @property
    def num_rows(self) -> int:
        return len(self.A)

    @property
    def num_cols(self) -> int:
        return len(self.c)


@dataclass
class LpSolution:
    problem: LpProblem
    objective: Fraction
    x: list                # per-vertex points
    lambdas: list          # per edge: {accepted tuple -> positive Fraction}
    basis: tuple           # sorted tuple of basic column names


def build_lp(inst: Instance) -> LpProblem:
    q = inst.q
    col_names: list = []
    c: list = []
    x_cols: list = []
    for vid, w in zip(inst.vertex_ids, inst.weights):
        if q == 2:
            x_cols.append(len(col_names))
            col_names.append(f"x[{vid}]")
            c.append(w)
        else:
            block = []
            for i in range(q):
                block.append(len(col_names))
                col_names.append(f"x[{vid}]:{i}")
                c.append(w * i)
            x_cols.append(block)

    edge_atoms: list = []
    for eidx, e in enumerate(inst.edges):
        atoms = upward_closure(inst.predicate_of(e))
        start = len(col_names)
        for t in atoms:
            col_names.append(f"lam[e{eidx}]:" + "".join(map(str, t)))
            c.append(ZERO)
        edge_atoms.append((start, atoms))

    ncols = len(col_names)
    A: list = []
    b: list = []

    def new_row():
        A.append([ZERO] * ncols)
        b.append(ZERO)
        return A[-1]

    if q > 2:
        for v in range(inst.n):
            row = new_row()
            for col in x_cols[v]:
                row[col] = ONE
            b[-1] = ONE

    for e, (start, atoms) in zip(inst.edges, edge_atoms):
        for j, v in enumerate(e.vertices):
            if q == 2:
                row = new_row()
                row[x_cols[v]] = ONE
                for a, t in enumerate(atoms):
                    if t[j] == 1:
                        row[start + a] = -ONE
            else:
                for i in range(q):
                    row = new_row()
                    row[x_cols[v][i]] = ONE
                    for a, t in enumerate(atoms):
                        if t[j] == i:
                            row[start + a] = -ONE
        row = new_row()
        for a in range(len(atoms)):
            row[start + a] = ONE
        b[-1] = ONE

    return LpProblem(inst, col_names, c, A, b, x_cols, edge_atoms)


def simplex_solve(problem: LpProblem) -> LpSolution:
    """Solve a built relaxation to a deterministic basic optimum."""
    res = simplex.solve_standard_form(problem.A, problem.b, problem.c)
    if res.status != simplex.OPTIMAL:
        raise simplex.SimplexError(
            f"hull relaxation did not solve to optimality: {res.status}"
        )
    inst = problem.instance
    x: list[Point] = []
    for v in range(inst.n):
        if inst.q == 2:
            x.append(res.values[problem.x_cols[v]])
        else:
            x.append(tuple(res.values[col] for col in problem.x_cols[v]))
    lambdas = []
    for start, atoms in problem.edge_atoms:
        lambdas.append(
            {t: res.values[start + a] for a, t in enumerate(atoms)
             if res.values[start + a] != 0}
        )
    basis = tuple(sorted(problem.col_names[j] for j in res.basis))
    objective = res.objective
    assert objective == val(inst, x)
    return LpSolution(problem, objective, x, lambdas, basis)


def solve_lp(inst: Instance) -> LpSolution:
    return simplex_solve(build_lp(inst))


def lp_value(inst: Instance) -> Fraction:
    return solve_lp(inst).objective


def val(inst: Instance, x: Sequence[Point]) -> Fraction:
    """Objective of a fractional solution: weighted expected label."""
    check_solution(inst, x)
    return sum(
        (w * point_value(inst.q, pt) for w, pt in zip(inst.weights, x)), ZERO
    )


def edge_decomposition_system(inst: Instance, x: Sequence[Point], e: Edge):
    """Equality system expressing x's edge restriction as an atom mixture.

    Returns ``(A, b, atoms)`` where the variables are one lambda per
    accepted tuple of the edge's predicate.
    """
    q = inst.q
    atoms = upward_closure(inst.predicate_of(e))
    A: list = []
    b: list = []
    for j, v in enumerate(e.vertices):
        if q == 2:
            A.append([ONE if t[j] == 1 else ZERO for t in atoms])
            b.append(x[v])
        else:
            for i in range(q):
                A.append([ONE if t[j] == i else ZERO for t in atoms])
                b.append(x[v][i])
    A.append([ONE] * len(atoms))
    b.append(ONE)
    return A, b, atoms


def check_feasible_fractional(inst: Instance, x: Sequence[Point]) -> bool:
    """True iff x satisfies every constraint of the hull relaxation.

    Each vertex value must lie in its domain and each edge restriction
    must admit a nonnegative mixture of accepted tuples (decided exactly
    by a rational phase-1 solve).
    """
    check_solution(inst, x)
    if not all(point_in_domain(inst.q, pt) for pt in x):
        return False
    for e in inst.edges:
        A, b, _ = edge_decomposition_system(inst, x, e)
        res = simplex.find_feasible_point(A, b)
        if res.status != simplex.OPTIMAL:
            return False
    return True


def standard_hvc_lp(inst: Instance) -> Fraction:
    """Classical covering LP: min w.x s.t. sum over each edge >= 1, x >= 0.

    Only defined for boolean instances whose edges all use the
    'at least one 1' covering predicate.
    """
    if inst.q != 2:
        raise ValueError("covering LP is defined for q = 2 only")
    for e in inst.edges:
        if not is_covering_predicate(inst.predicate_of(e)):
            raise ValueError(
                f"edge predicate {inst.predicate_of(e).name} is not the "
                "covering predicate"
            )
    n, m = inst.n, len(inst.edges)
    ncols = n + m  # x variables plus one surplus variable per edge
    A: list = []
    b: list = []
    for eidx, e in enumerate(inst.edges):
        row = [ZERO] * ncols
        for v in e.vertices:
            row[v] += ONE
        row[n + eidx] = -ONE
        A.append(row)
        b.append(ONE)
    c = list(inst.weights) + [ZERO] * m
    res = simplex.solve_standard_form(A, b, c)
    if res.status != simplex.OPTIMAL:
        raise simplex.SimplexError(f"covering LP: {res.status}")
    return res.objective
