"""Exact rational linear programming with certificates.

The engine is a dense two-phase tableau simplex over ``Fraction`` with
Bland's rule (lowest column index enters, lowest basic index breaks ratio
ties), which makes every answer deterministic.

Variables are free. Strict rows are decided by the two-phase rule: weaken
them to ``>=``, then maximize a common slack ``t`` (capped at 1) subtracted
from every strict row; the system is strictly feasible iff ``t* > 0``.
Infeasibility is certified by solving the theorem-of-the-alternative system,
so every ``Infeasible`` carries a Farkas/Motzkin multiplier vector that
:func:`check_farkas` re-verifies with plain dot products.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .linalg import ONE, ZERO, Vec, dot, to_fraction, vec


class Relation(str, Enum):
    GE = ">="
    GT = ">"
    EQ = "="


@dataclass(frozen=True)
class LinConstraint:
    """``coeffs . x  (relation)  rhs``."""

    coeffs: Vec
    relation: Relation
    rhs: Fraction = ZERO

    def __post_init__(self):
        object.__setattr__(self, "coeffs", vec(self.coeffs))
        object.__setattr__(self, "relation", Relation(self.relation))
        object.__setattr__(self, "rhs", to_fraction(self.rhs))

    @classmethod
    def ge(cls, coeffs, rhs=0) -> "LinConstraint":
        return cls(coeffs, Relation.GE, rhs)

    @classmethod
    def gt(cls, coeffs, rhs=0) -> "LinConstraint":
        return cls(coeffs, Relation.GT, rhs)

    @classmethod
    def eq(cls, coeffs, rhs=0) -> "LinConstraint":
        return cls(coeffs, Relation.EQ, rhs)

    def holds(self, x: Sequence) -> bool:
        lhs = dot(self.coeffs, x)
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        if self.relation is Relation.GT:
            return lhs > self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class Feasible:
    point: Vec


@dataclass(frozen=True)
class Infeasible:
    farkas: Vec


@dataclass(frozen=True)
class Unbounded:
    ray: Vec


@dataclass(frozen=True)
class Bounded:
    value: Fraction
    point: Vec


LpOutcome = Union[Feasible, Infeasible, Unbounded, Bounded]


class _Tableau:
    """Standard form ``min c.z  s.t.  A z = b, z >= 0``."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], ncols: int):
        self.n = ncols
        m = len(rows)
        self.m = m
        width = ncols + m
        t = []
        for i, (row, b) in enumerate(zip(rows, rhs)):
            if b < 0:
                row = [-a for a in row]
                b = -b
            full = list(row) + [ZERO] * m + [b]
            full[ncols + i] = ONE
            t.append(full)
        self.t = t
        self.width = width
        self.basis = [ncols + i for i in range(m)]
        cost = [ZERO] * (width + 1)
        for row in t:
            for j in range(ncols):
                if row[j]:
                    cost[j] -= row[j]
            cost[width] -= row[width]
        self.cost = cost
        self.limit = width

    def pivot(self, r: int, j: int) -> None:
        t = self.t
        prow = t[r]
        p = prow[j]
        if p != 1:
            prow = [a / p if a else a for a in prow]
            t[r] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for i in range(len(t)):
            if i == r:
                continue
            row = t[i]
            f = row[j]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
        f = self.cost[j]
        if f:
            cost = self.cost
            for k in nz:
                cost[k] -= f * prow[k]
        self.basis[r] = j

    def run(self) -> Optional[int]:
        """Iterate to optimality. Returns an unbounded column or None."""
        t, cost, last = self.t, self.cost, self.width
        while True:
            j = next((k for k in range(self.limit) if cost[k] < 0), None)
            if j is None:
                return None
            best = None
            for r, row in enumerate(t):
                a = row[j]
                if a > 0:
                    ratio = row[last] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return j
            self.pivot(best[1], j)

    def values(self) -> list[Fraction]:
        z = [ZERO] * self.n
        for r, b in enumerate(self.basis):
            if b < self.n:
                z[b] = self.t[r][self.width]
        return z


def solve_standard(rows, rhs, c=None):
    """Solve ``min c.z, A z = b, z >= 0``.

    Returns ``("infeasible",)``, ``("optimal", z, value)`` or
    ``("unbounded", z, direction)``.
    """
    n = len(rows[0]) if rows else (len(c) if c is not None else 0)
    if not rows:
        if c is not None and any(x < 0 for x in c):
            d = [ZERO] * n
            d[next(k for k, x in enumerate(c) if x < 0)] = ONE
            return ("unbounded", [ZERO] * n, d)
        return ("optimal", [ZERO] * n, ZERO)
    tab = _Tableau([list(r) for r in rows], list(rhs), n)
    tab.run()
    if tab.cost[tab.width] != 0:
        return ("infeasible",)
    # Drive artificial variables out of the basis; drop redundant rows.
    keep = []
    for r in range(tab.m):
        if tab.basis[r] >= n:
            j = next((k for k in range(n) if tab.t[r][k] != 0), None)
            if j is None:
                continue
            tab.pivot(r, j)
        keep.append(r)
    t = [tab.t[r][:n] + [tab.t[r][tab.width]] for r in keep]
    basis = [tab.basis[r] for r in keep]
    if c is None:
        z = [ZERO] * n
        for r, b in enumerate(basis):
            z[b] = t[r][n]
        return ("optimal", z, ZERO)
    phase2 = _Tableau.__new__(_Tableau)
    phase2.n = n
    phase2.m = len(t)
    phase2.t = t
    phase2.width = n
    phase2.limit = n
    phase2.basis = basis
    cost = [to_fraction(x) for x in c] + [ZERO]
    for r, b in enumerate(basis):
        cb = cost[b]
        if cb:
            row = t[r]
            cost = [x - cb * y if y else x for x, y in zip(cost, row)]
    phase2.cost = cost
    col = phase2.run()
    z = phase2.values()
    if col is not None:
        d = [ZERO] * n
        d[col] = ONE
        for r, b in enumerate(phase2.basis):
            d[b] = -phase2.t[r][col]
        return ("unbounded", z, d)
    return ("optimal", z, -phase2.cost[n])


def _build(constraints: Sequence[LinConstraint], n: int, with_slack_var: bool):
    """Split free variables and add slacks; optional common strict slack ``t``."""
    ineq = [i for i, c in enumerate(constraints) if c.relation is not Relation.EQ]
    slack_col = {i: 2 * n + k for k, i in enumerate(ineq)}
    ncols = 2 * n + len(ineq) + (2 if with_slack_var else 0)
    t_col = 2 * n + len(ineq)
    rows, rhs = [], []
    for i, c in enumerate(constraints):
        row = [ZERO] * ncols
        for j, a in enumerate(c.coeffs):
            if a:
                row[j] = a
                row[n + j] = -a
        if i in slack_col:
            row[slack_col[i]] = -ONE
        if c.relation is Relation.GT and with_slack_var:
            row[t_col] = -ONE
        rows.append(row)
        rhs.append(c.rhs)
    if with_slack_var:
        row = [ZERO] * ncols
        row[t_col] = ONE
        row[t_col + 1] = ONE
        rows.append(row)
        rhs.append(ONE)
    return rows, rhs, ncols, t_col


def _point(z, n) -> Vec:
    return tuple(z[j] - z[n + j] for j in range(n))


def lp(
    objective: Optional[Sequence] = None,
    constraints: Sequence[LinConstraint] = (),
    *,
    dim: Optional[int] = None,
    sense: str = "max",
) -> LpOutcome:
    """Decide or optimize a linear system over free rational variables.

    Without an objective the verdict is ``Feasible`` or ``Infeasible``. With
    one it is ``Bounded``, ``Unbounded`` or ``Infeasible``. Objectives cannot
    be combined with strict rows (the supremum over an open set need not be
    attained).
    """
    constraints = list(constraints)
    if dim is None:
        if objective is not None:
            dim = len(objective)
        elif constraints:
            dim = len(constraints[0].coeffs)
        else:
            raise ValueError("dimension unknown")
    for c in constraints:
        if len(c.coeffs) != dim:
            raise ValueError(f"dimension mismatch: constraint of length {len(c.coeffs)} in dimension {dim}")
    strict = any(c.relation is Relation.GT for c in constraints)
    if objective is not None:
        objective = vec(objective)
        if len(objective) != dim:
            raise ValueError("objective dimension mismatch")
        if strict:
            raise ValueError("objectives over strict systems are not supported")
    if not constraints and objective is None:
        return Feasible(tuple([ZERO] * dim))

    rows, rhs, ncols, t_col = _build(constraints, dim, strict)
    if strict:
        c = [ZERO] * ncols
        c[t_col] = -ONE
        status = solve_standard(rows, rhs, c)
        if status[0] == "optimal" and status[2] < 0:
            return Feasible(_point(status[1], dim))
        return Infeasible(farkas_certificate(constraints, dim))
    if objective is None:
        status = solve_standard(rows, rhs, None)
        if status[0] == "infeasible":
            return Infeasible(farkas_certificate(constraints, dim))
        return Feasible(_point(status[1], dim))
    sign = -1 if sense == "max" else 1
    c = [ZERO] * ncols
    for j, a in enumerate(objective):
        c[j] = sign * a
        c[dim + j] = -sign * a
    status = solve_standard(rows, rhs, c)
    if status[0] == "infeasible":
        return Infeasible(farkas_certificate(constraints, dim))
    if status[0] == "unbounded":
        return Unbounded(_point(status[2], dim))
    return Bounded(sign * status[2], _point(status[1], dim))


def farkas_certificate(constraints: Sequence[LinConstraint], dim: int) -> Vec:
    """Multipliers proving that ``constraints`` has no solution.

    Solves ``sum y_i a_i = 0`` with ``y_i >= 0`` on inequality rows and, in
    the presence of strict rows, ``y.b >= 0`` and ``y.b + sum_strict y = 1``
    (otherwise ``y.b = 1``).
    """
    strict = any(c.relation is Relation.GT for c in constraints)
    cols = []  # (constraint index, sign)
    for i, c in enumerate(constraints):
        cols.append((i, 1))
        if c.relation is Relation.EQ:
            cols.append((i, -1))
    rows, rhs = [], []
    for j in range(dim):
        rows.append([s * constraints[i].coeffs[j] for i, s in cols] + ([ZERO] if strict else []))
        rhs.append(ZERO)
    by = [s * constraints[i].rhs for i, s in cols]
    if strict:
        rows.append(by + [-ONE])
        rhs.append(ZERO)
        rows.append(
            [b + (ONE if constraints[i].relation is Relation.GT else ZERO) for b, (i, _) in zip(by, cols)] + [ZERO]
        )
        rhs.append(ONE)
    else:
        rows.append(by)
        rhs.append(ONE)
    status = solve_standard(rows, rhs, None)
    if status[0] == "infeasible":
        raise AssertionError("system is neither feasible nor certifiably infeasible")
    y = [ZERO] * len(constraints)
    for (i, s), v in zip(cols, status[1]):
        y[i] += s * v
    return tuple(y)


def check_point(constraints: Sequence[LinConstraint], x: Sequence) -> bool:
    return all(c.holds(x) for c in constraints)


def check_farkas(constraints: Sequence[LinConstraint], y: Sequence) -> bool:
    """Re-verify an infeasibility certificate by exact arithmetic."""
    if len(y) != len(constraints) or not constraints:
        return False
    dim = len(constraints[0].coeffs)
    total = [ZERO] * dim
    bound = ZERO
    strict_weight = ZERO
    for yi, c in zip(y, constraints):
        if c.relation is not Relation.EQ and yi < 0:
            return False
        if yi:
            for j, a in enumerate(c.coeffs):
                total[j] += yi * a
            bound += yi * c.rhs
            if c.relation is Relation.GT:
                strict_weight += yi
    if any(total):
        return False
    return bound > 0 or (bound == 0 and strict_weight > 0)


def check_ray(objective: Sequence, constraints: Sequence[LinConstraint], ray: Sequence, sense: str = "max") -> bool:
    gain = dot(objective, ray)
    if (sense == "max" and gain <= 0) or (sense != "max" and gain >= 0):
        return False
    for c in constraints:
        d = dot(c.coeffs, ray)
        if c.relation is Relation.EQ and d != 0:
            return False
        if c.relation is not Relation.EQ and d < 0:
            return False
    return True
