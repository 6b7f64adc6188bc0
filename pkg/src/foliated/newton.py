"""Newton polyhedra of monomial ideals and their log canonical thresholds.

For a monomial ideal with exponent vectors ``v_1..v_m`` the Newton
polyhedron is ``conv(v_i) + R^n_{>=0}``, and by Howald's theorem

    lct_0 = max{c > 0 : (1/c) * (1, ..., 1) in P}
          = min over w >= 0, w != 0 of  sum(w) / min_i <w, v_i>.

Both sides are computed by one exact LP (minimize ``t`` subject to
``t * (1..1)`` in ``P``); its primal solution is a membership witness and its
dual solution is a weight vector attaining the minimum on the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .lp import INFEASIBLE, OPTIMAL, Constraint, LPError, check_certificate, solve_lp
from .poly import INFINITY, Infinity, ParseError, Polynomial, as_fraction, parse_polynomial_list

__all__ = [
    "MonomialIdeal",
    "MembershipResult",
    "LctResult",
    "parse_ideal",
    "newton_membership",
    "lct_monomial",
    "lct_generic_combination",
    "lct_upper_bound_from_support",
    "weight_bound",
]

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class MonomialIdeal:
    dimension: int
    generators: tuple[Exponent, ...]

    def __post_init__(self):
        gens = tuple(sorted({tuple(int(e) for e in g) for g in self.generators}, reverse=True))
        if not gens:
            raise ValueError("a monomial ideal needs at least one generator")
        for g in gens:
            if len(g) != self.dimension:
                raise ValueError(f"generator {g} does not have length {self.dimension}")
            if min(g) < 0:
                raise ValueError(f"negative exponent in generator {g}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_support(cls, f: Polynomial) -> MonomialIdeal:
        return cls(f.dimension, tuple(f.support))

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    def to_text(self) -> str:
        return ", ".join(Polynomial.monomial(g).to_string() for g in self.generators)


def parse_ideal(text: str, dimension: int) -> MonomialIdeal:
    gens = []
    for p in parse_polynomial_list(text, dimension):
        if not p.is_monomial():
            raise ParseError(f"{p} is not a monomial", 0, text)
        gens.append(next(iter(p.support)))
    return MonomialIdeal(dimension, tuple(gens))


def _scale_to_integers(w: Sequence[Fraction]) -> tuple[int, ...]:
    d = lcm(*(x.denominator for x in w)) if w else 1
    ints = [int(x * d) for x in w]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


def weight_bound(w: Sequence, generators: Iterable[Exponent]) -> Fraction | Infinity:
    """``sum(w) / min_i <w, v_i>``; :data:`INFINITY` when the minimum is zero."""
    w = [as_fraction(x) for x in w]
    m = min(sum((a * b for a, b in zip(w, g)), Fraction(0)) for g in generators)
    if m <= 0:
        return INFINITY
    return sum(w, Fraction(0)) / m


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    coefficients: tuple[Fraction, ...] | None = None  # convex weights, one per generator
    slack: tuple[Fraction, ...] | None = None
    separator: tuple[int, ...] | None = None  # w with <w,q> < min <w,v_i>

    def __bool__(self) -> bool:
        return self.member

    def verify(self, q: Sequence, ideal: MonomialIdeal) -> bool:
        q = [as_fraction(v) for v in q]
        gens = ideal.generators
        if self.member:
            mu, s = self.coefficients, self.slack
            if mu is None or s is None or any(v < 0 for v in mu) or any(v < 0 for v in s):
                return False
            if sum(mu, Fraction(0)) != 1:
                return False
            for k in range(ideal.dimension):
                if sum((m * g[k] for m, g in zip(mu, gens)), Fraction(0)) + s[k] != q[k]:
                    return False
            return True
        w = self.separator
        if w is None or any(x < 0 for x in w):
            return False
        lhs = sum((a * b for a, b in zip(w, q)), Fraction(0))
        return lhs < min(sum(a * b for a, b in zip(w, g)) for g in gens)


def newton_membership(q: Sequence, ideal: MonomialIdeal) -> MembershipResult:
    """Decide ``q in P(ideal)`` with a convex-combination or separating witness."""
    q = [as_fraction(v) for v in q]
    n = ideal.dimension
    if len(q) != n:
        raise ValueError(f"point has length {len(q)}, expected {n}")
    if any(v < 0 for v in q):
        raise ValueError("the point must have non-negative coordinates")
    gens = ideal.generators
    m = len(gens)
    cons = [Constraint(tuple(g[k] for g in gens), "<=", q[k]) for k in range(n)]
    cons.append(Constraint((1,) * m, "==", 1))
    res = solve_lp([0] * m, cons)
    if res.status == OPTIMAL:
        mu = res.x
        slack = tuple(q[k] - sum((mu[i] * gens[i][k] for i in range(m)), Fraction(0)) for k in range(n))
        return MembershipResult(True, mu, slack)
    if res.status != INFEASIBLE:
        raise LPError(f"membership LP returned {res.status}")
    # Farkas: w_k = -y_k >= 0, y_0 = multiplier of the convexity row
    w = [-v for v in res.y[:n]]
    out = MembershipResult(False, separator=_scale_to_integers(w))
    if not out.verify(q, ideal):
        raise LPError("separating certificate failed to verify")
    return out


@dataclass(frozen=True)
class LctResult:
    value: Fraction
    ideal: MonomialIdeal
    coefficients: tuple[Fraction, ...]
    slack: tuple[Fraction, ...]
    weight: tuple[int, ...]
    generic: bool = False

    @property
    def general_combination_is_smooth(self) -> bool:
        """A general combination is smooth at 0 iff some generator has degree one."""
        return any(sum(g) == 1 for g in self.ideal.generators)

    def verify(self) -> bool:
        """Re-check both witnesses without the LP solver.

        The membership witness shows ``(1/value) * 1`` lies in ``P`` and the
        weight vector shows no larger threshold is possible.
        """
        if self.value <= 0:
            return False
        point = [1 / self.value] * self.ideal.dimension
        member = MembershipResult(True, self.coefficients, self.slack)
        if not member.verify(point, self.ideal):
            return False
        if any(x < 0 for x in self.weight) or not any(self.weight):
            return False
        return weight_bound(self.weight, self.ideal.generators) == self.value


def lct_monomial(ideal: MonomialIdeal) -> LctResult | Infinity:
    """Log canonical threshold at the origin; :data:`INFINITY` for the unit ideal."""
    if ideal.is_unit:
        return INFINITY
    n = ideal.dimension
    gens = ideal.generators
    m = len(gens)
    # variables: mu_1..mu_m, t ; minimize t subject to sum mu_i v_i <= t * 1
    cons = [Constraint(tuple(g[k] for g in gens) + (-1,), "<=", 0) for k in range(n)]
    cons.append(Constraint((1,) * m + (0,), "==", 1))
    objective = [0] * m + [1]
    res = solve_lp(objective, cons)
    if res.status != OPTIMAL or not check_certificate(res, objective, cons):
        raise LPError(f"lct LP failed: {res.status}")
    t = res.value
    mu = res.x[:m]
    slack = tuple(t - sum((mu[i] * gens[i][k] for i in range(m)), Fraction(0)) for k in range(n))
    weight = _scale_to_integers([-v for v in res.y[:n]])
    out = LctResult(1 / t, ideal, tuple(mu), slack, weight)
    if not out.verify():
        raise LPError("lct witnesses failed to verify")
    return out


def lct_generic_combination(monomials: Iterable[Sequence[int]]) -> LctResult | Infinity:
    """The lct of a general linear combination of ``monomials``.

    Equal to the lct of the ideal they generate; the result carries
    ``generic=True`` because the equality only holds for general
    coefficients, which is assumed and not checked.
    """
    monomials = [tuple(a) for a in monomials]
    if not monomials:
        raise ValueError("need at least one monomial")
    res = lct_monomial(MonomialIdeal(len(monomials[0]), tuple(monomials)))
    if isinstance(res, Infinity):
        return res
    return LctResult(res.value, res.ideal, res.coefficients, res.slack, res.weight, generic=True)


def lct_upper_bound_from_support(f: Polynomial) -> LctResult:
    """Upper bound for the lct of ``{f = 0}`` at 0: the lct of the ideal of its support.

    A value below 1 certifies that ``{f = 0}`` is not log canonical at the
    origin; ``weight`` is then the refuting monomial valuation.
    """
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if f.constant_term() != 0:
        raise ValueError("f is a unit at the origin")
    res = lct_monomial(MonomialIdeal.from_support(f))
    assert not isinstance(res, Infinity)
    return res
