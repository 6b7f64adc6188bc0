"""Exact two-phase simplex over the rationals with Bland's rule.

Problems are stated as ``minimize`` (or ``maximize``) ``c.x`` subject to
constraints ``a.x <= b``, ``a.x >= b`` or ``a.x == b``.  Variables are
non-negative unless listed in ``free``.  Every verdict comes with a
certificate that :func:`check_certificate` re-validates by direct
arithmetic, without looking at the tableau:

* optimal: primal point ``x`` and dual multipliers ``y`` (one per constraint)
  with equal objective values;
* infeasible: Farkas multipliers ``y`` proving no ``x`` exists;
* unbounded: a feasible ``x`` and a recession direction ``d`` improving the
  objective.

Sign conventions for ``y`` (minimization form): ``y_k <= 0`` on ``<=`` rows,
``y_k >= 0`` on ``>=`` rows, free on ``==`` rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import as_fraction

__all__ = ["Constraint", "LPResult", "solve_lp", "check_certificate", "LPError"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LPError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    op: str
    rhs: Fraction

    def __post_init__(self):
        if self.op not in ("<=", ">=", "=="):
            raise ValueError(f"unknown constraint operator {self.op!r}")
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", as_fraction(self.rhs))


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None
    y: tuple[Fraction, ...] | None = None
    direction: tuple[Fraction, ...] | None = None
    maximize: bool = False
    pivots: int = 0
    extra: dict = field(default_factory=dict)


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


class _Tableau:
    """Dense tableau ``[A | b]`` with one basic variable per row."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, col: int) -> None:
        row = self.rows[r]
        p = row[col]
        if p != 1:
            self.rows[r] = row = [v / p for v in row]
            self.rhs[r] /= p
        for k, other in enumerate(self.rows):
            if k != r and other[col]:
                f = other[col]
                self.rows[k] = [a - f * b for a, b in zip(other, row)]
                self.rhs[k] -= f * self.rhs[r]
        self.basis[r] = col
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        rc = list(cost)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                rc = [v - cb * a for v, a in zip(rc, self.rows[r])]
        return rc

    def run(self, cost: Sequence[Fraction], allowed: int) -> int | None:
        """Bland's-rule simplex on columns ``< allowed``; returns an unbounded column or None."""
        while True:
            rc = self.reduced_costs(cost)
            entering = next((j for j in range(allowed) if rc[j] < 0), None)
            if entering is None:
                return None
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return entering
            self.pivot(best[1], entering)


def solve_lp(
    objective: Sequence,
    constraints: Sequence[Constraint],
    *,
    maximize: bool = False,
    free: Sequence[int] = (),
) -> LPResult:
    """Solve a rational LP exactly; ``free`` lists 0-based unrestricted variables."""
    nvar = len(objective)
    c_orig = [as_fraction(v) for v in objective]
    for con in constraints:
        if len(con.coeffs) != nvar:
            raise ValueError("constraint length does not match the objective")
    c_min = [-v for v in c_orig] if maximize else c_orig
    free = sorted(set(free))

    # standard form columns: originals, negated copies of free vars, slacks, artificials
    m = len(constraints)
    cols_x = nvar + len(free)
    slack_rows = [k for k, con in enumerate(constraints) if con.op != "=="]
    n_std = cols_x + len(slack_rows)
    rows, rhs, flips = [], [], []
    for k, con in enumerate(constraints):
        row = list(con.coeffs) + [-con.coeffs[j] for j in free] + [Fraction(0)] * len(slack_rows)
        if con.op != "==":
            row[cols_x + slack_rows.index(k)] = Fraction(1 if con.op == "<=" else -1)
        b = con.rhs
        flip = b < 0
        if flip:
            row = [-v for v in row]
            b = -b
        flips.append(flip)
        rows.append(row + [Fraction(int(i == k)) for i in range(m)])
        rhs.append(b)
    cost = c_min + [-c_min[j] for j in free] + [Fraction(0)] * (len(slack_rows) + m)
    tab = _Tableau(rows, rhs, [n_std + k for k in range(m)])

    def duals(cost_vec):
        # reduced cost of artificial column k is cost_a - y_k
        rc = tab.reduced_costs(cost_vec)
        y_std = [cost_vec[n_std + k] - rc[n_std + k] for k in range(m)]
        return tuple(-v if f else v for v, f in zip(y_std, flips))

    # phase 1
    phase1 = [Fraction(0)] * n_std + [Fraction(1)] * m
    tab.run(phase1, n_std + m)
    infeas = sum(tab.rhs[r] for r, b in enumerate(tab.basis) if b >= n_std)
    if infeas > 0:
        y = duals(phase1)
        return LPResult(INFEASIBLE, y=y, maximize=maximize, pivots=tab.pivots)

    # drive zero-level artificials out of the basis where possible
    for r, b in enumerate(tab.basis):
        if b >= n_std:
            col = next((j for j in range(n_std) if tab.rows[r][j] != 0), None)
            if col is not None:
                tab.pivot(r, col)

    # phase 2; artificials never re-enter, leftover ones sit in all-zero rows
    cost_full = cost[:n_std] + [Fraction(0)] * m
    unbounded_col = tab.run(cost_full, n_std)

    x_std = [Fraction(0)] * (n_std + m)
    for r, b in enumerate(tab.basis):
        x_std[b] = tab.rhs[r]
    x = [x_std[j] for j in range(nvar)]
    for i, j in enumerate(free):
        x[j] -= x_std[nvar + i]
    x = tuple(x)

    if unbounded_col is not None:
        d_std = [Fraction(0)] * (n_std + m)
        d_std[unbounded_col] = Fraction(1)
        for r, b in enumerate(tab.basis):
            d_std[b] = -tab.rows[r][unbounded_col]
        d = [d_std[j] for j in range(nvar)]
        for i, j in enumerate(free):
            d[j] -= d_std[nvar + i]
        return LPResult(UNBOUNDED, x=x, direction=tuple(d), maximize=maximize, pivots=tab.pivots)

    value = _dot(c_orig, x)
    y = duals(cost_full)
    return LPResult(OPTIMAL, value=value, x=x, y=y, maximize=maximize, pivots=tab.pivots)


def _feasible(x, constraints, free) -> bool:
    for j, v in enumerate(x):
        if j not in free and v < 0:
            return False
    for con in constraints:
        lhs = _dot(con.coeffs, x)
        if con.op == "<=" and lhs > con.rhs:
            return False
        if con.op == ">=" and lhs < con.rhs:
            return False
        if con.op == "==" and lhs != con.rhs:
            return False
    return True


def _dual_signs_ok(y, constraints) -> bool:
    for v, con in zip(y, constraints):
        if con.op == "<=" and v > 0:
            return False
        if con.op == ">=" and v < 0:
            return False
    return True


def check_certificate(
    result: LPResult,
    objective: Sequence,
    constraints: Sequence[Constraint],
    *,
    free: Sequence[int] = (),
) -> bool:
    """Re-validate ``result`` against the problem by exact arithmetic."""
    c = [as_fraction(v) for v in objective]
    c_min = [-v for v in c] if result.maximize else c
    free = set(free)
    nvar = len(c)

    def column_sums(y):
        return [sum((v * con.coeffs[j] for v, con in zip(y, constraints)), Fraction(0)) for j in range(nvar)]

    if result.status == OPTIMAL:
        if not _feasible(result.x, constraints, free) or not _dual_signs_ok(result.y, constraints):
            return False
        yA = column_sums(result.y)
        for j in range(nvar):
            if j in free and yA[j] != c_min[j]:
                return False
            if j not in free and yA[j] > c_min[j]:
                return False
        dual_value = _dot(result.y, [con.rhs for con in constraints])
        primal_min = _dot(c_min, result.x)
        return dual_value == primal_min and result.value == _dot(c, result.x)

    if result.status == INFEASIBLE:
        if not _dual_signs_ok(result.y, constraints):
            return False
        yA = column_sums(result.y)
        for j in range(nvar):
            if j in free and yA[j] != 0:
                return False
            if j not in free and yA[j] > 0:
                return False
        return _dot(result.y, [con.rhs for con in constraints]) > 0

    if result.status == UNBOUNDED:
        if not _feasible(result.x, constraints, free):
            return False
        d = result.direction
        if any(d[j] < 0 for j in range(nvar) if j not in free):
            return False
        for con in constraints:
            ad = _dot(con.coeffs, d)
            if (con.op == "<=" and ad > 0) or (con.op == ">=" and ad < 0) or (con.op == "==" and ad != 0):
                return False
        return _dot(c_min, d) < 0

    raise LPError(f"unknown status {result.status!r}")
