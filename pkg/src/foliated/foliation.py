"""Rank one foliation germs at the origin of affine space and their tangency divisors.

A foliation is given by a polynomial vector field ``v = sum_i a_i d/dx_i``.
A log boundary is a set ``R`` of coordinate indices; ``T(-log B)`` is then
generated by ``x_i d/dx_i`` for ``i in R`` and ``d/dx_i`` otherwise.

Matrix convention: ``linear_part(v)[i][j]`` is the coefficient of ``x_j`` in
``a_i``, so row ``i`` is the linear form ``A_i`` of the ``i``-th component.
This is the transpose of writing ``v_0 = sum a_ij x_i d/dx_j``; nilpotency
and everything derived from it are unaffected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .certificate import (
    GENERICITY_ASSUMPTION,
    Certificate,
    LowestPartReduction,
    MonomialGenericHowald,
    PairSnc,
    ReducedSncMonomial,
    Restriction,
    SmoothLinear,
)
from .matrix import (
    RationalMatrix,
    classify_special,
    first_non_nilpotent_proper,
    is_nilpotent,
    principal_submatrix,
)
from .newton import lct_monomial, MonomialIdeal
from .poly import (
    Polynomial,
    as_fraction,
    evaluate,
    infer_dimension,
    parse_polynomial_list,
    partial_derivative,
    weighted_lowest_part,
)

__all__ = [
    "VectorField",
    "MpVerdict",
    "TERMINAL",
    "LOG_CANONICAL",
    "NOT_LC",
    "FoliationError",
    "RetryBudgetExhausted",
    "parse_vector_field",
    "parse_boundary",
    "linear_part",
    "mp_classify",
    "validate_pair",
    "log_generators",
    "annihilator_fields",
    "tangency_determinant",
    "polynomial_determinant",
    "omega_contract",
    "f_from_matrix",
    "select_lambda",
    "gamma_construct",
    "GammaResult",
    "proportionality_constant",
    "MAX_REDRAWS",
    "LAMBDA_RANGE",
]

TERMINAL = "TERMINAL"
LOG_CANONICAL = "LOG_CANONICAL"
NOT_LC = "NOT_LC"

LAMBDA_RANGE = (1, 10**6)
MAX_REDRAWS = 16


class FoliationError(ValueError):
    pass


class RetryBudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class VectorField:
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        n = len(comps)
        if n == 0:
            raise ValueError("a vector field needs at least one component")
        if any(c.dimension != n for c in comps):
            raise ValueError(f"all components must be polynomials in {n} variables")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, components: Iterable[Polynomial]) -> VectorField:
        return cls(tuple(components))

    @classmethod
    def coordinate(cls, i: int, n: int, log: bool = False) -> VectorField:
        """``d/dx_i``, or ``x_i d/dx_i`` when ``log`` is set."""
        comps = [Polynomial.zero(n)] * n
        comps[i - 1] = Polynomial.variable(i, n) if log else Polynomial.constant(1, n)
        return cls(tuple(comps))

    @property
    def dimension(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Polynomial:
        """1-based component."""
        return self.components[i - 1]

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField(tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, c) -> VectorField:
        return VectorField(tuple(a.scale(c) for a in self.components))

    def multiply(self, p: Polynomial) -> VectorField:
        return VectorField(tuple(a * p for a in self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def at_origin(self) -> tuple[Fraction, ...]:
        return tuple(c.constant_term() for c in self.components)

    def is_singular_at_origin(self) -> bool:
        return not any(self.at_origin())

    def apply(self, f: Polynomial) -> Polynomial:
        """The derivative ``v(f)``."""
        out = Polynomial.zero(self.dimension)
        for i, a in enumerate(self.components, 1):
            if a:
                out = out + a * partial_derivative(f, i)
        return out

    def to_text(self) -> str:
        return ", ".join(str(c) for c in self.components)

    def __str__(self) -> str:
        return self.to_text()


def parse_vector_field(text: str, dimension: int | None = None) -> VectorField:
    """Comma-separated components; the dimension defaults to their number."""
    if dimension is None:
        dimension = len(parse_polynomial_list(text, max(infer_dimension(text), 1)))
    return VectorField(tuple(parse_polynomial_list(text, dimension)))


def parse_boundary(text: str, n: int) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    R = frozenset(int(t) for t in text.split(","))
    _check_boundary(R, n)
    return R


def _check_boundary(R: Iterable[int], n: int) -> frozenset[int]:
    R = frozenset(R)
    if any(not 1 <= i <= n for i in R):
        raise ValueError(f"boundary {sorted(R)} is not a subset of 1..{n}")
    return R


def _lambda(lam: Sequence, n: int) -> tuple[Fraction, ...]:
    lam = tuple(as_fraction(v) for v in lam)
    if len(lam) != n:
        raise ValueError(f"need {n} coefficients, got {len(lam)}")
    return lam


# ---------------------------------------------------------------------------
# linear part and singularity type

def linear_part(v: VectorField) -> RationalMatrix:
    if not v.is_singular_at_origin():
        raise FoliationError("the vector field does not vanish at the origin")
    n = v.dimension
    unit = [tuple(int(k == j) for k in range(n)) for j in range(n)]
    return RationalMatrix(tuple(tuple(c.coefficient(unit[j]) for j in range(n)) for c in v.components))


@dataclass(frozen=True)
class MpVerdict:
    tag: str
    linear_part: RationalMatrix | None = None


def mp_classify(v: VectorField) -> MpVerdict:
    """Terminal iff nonsingular; at a singular point, log canonical iff the linear part is not nilpotent."""
    if v.is_zero():
        raise FoliationError("the zero vector field does not define a foliation")
    if not v.is_singular_at_origin():
        return MpVerdict(TERMINAL)
    A = linear_part(v)
    return MpVerdict(NOT_LC if is_nilpotent(A) else LOG_CANONICAL, A)


def validate_pair(v: VectorField, delta: Polynomial | None) -> bool:
    """False when ``delta`` passes through a singular point of ``v`` (then the pair is not lc)."""
    if delta is None or not v.is_singular_at_origin():
        return True
    if delta.dimension != v.dimension:
        raise ValueError("divisor and vector field live in different dimensions")
    return delta.constant_term() != 0


# ---------------------------------------------------------------------------
# log tangent fields, determinants, contraction

def log_generators(n: int, R: Iterable[int]) -> list[VectorField]:
    R = _check_boundary(R, n)
    return [VectorField.coordinate(i, n, log=i in R) for i in range(1, n + 1)]


def annihilator_fields(lam: Sequence, R: Iterable[int]) -> list[VectorField]:
    """``n - 1`` log fields spanning the kernel of ``omega = sum lam_i dx_i/x_i (i in R) + lam_i dx_i``.

    With ``p`` the first index where ``lam_p != 0`` and ``u_i`` the log
    generators, the fields are ``lam_i u_p - lam_p u_i`` for ``i != p``.
    """
    n = len(lam)
    lam = _lambda(lam, n)
    R = _check_boundary(R, n)
    p = next((i for i, c in enumerate(lam, 1) if c), None)
    if p is None:
        raise ValueError("all coefficients are zero")
    u = log_generators(n, R)
    return [u[p - 1].scale(lam[i - 1]) - u[i - 1].scale(lam[p - 1]) for i in range(1, n + 1) if i != p]


def polynomial_determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square matrix of polynomials by memoised Laplace expansion."""
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise ValueError("matrix must be square")
    if m == 0:
        raise ValueError("empty matrix")
    n = rows[0][0].dimension

    @lru_cache(maxsize=None)
    def minor(r: int, cols: frozenset[int]) -> Polynomial:
        if r == m:
            return Polynomial.constant(1, n)
        total = Polynomial.zero(n)
        ordered = sorted(cols)
        for k, c in enumerate(ordered):
            entry = rows[r][c]
            if entry:
                term = entry * minor(r + 1, cols - {c})
                total = total - term if k % 2 else total + term
        return total

    return minor(0, frozenset(range(m)))


def tangency_determinant(w: VectorField, vs: Sequence[VectorField]) -> Polynomial:
    """``w ^ v_1 ^ ... ^ v_{n-1}`` as the determinant with rows ``w, v_1, ..., v_{n-1}``."""
    n = w.dimension
    if len(vs) != n - 1:
        raise ValueError(f"need exactly {n - 1} fields, got {len(vs)}")
    if any(v.dimension != n for v in vs):
        raise ValueError("dimension mismatch")
    return polynomial_determinant([w.components] + [v.components for v in vs])


def _boundary_product(n: int, indices: Iterable[int]) -> Polynomial:
    alpha = [0] * n
    for j in indices:
        alpha[j - 1] = 1
    return Polynomial.monomial(alpha)


def _contract(comps: Sequence[Polynomial], lam: Sequence[Fraction], R: frozenset[int], n: int) -> Polynomial:
    # sum_{i in R} lam_i c_i prod_{R - i} x_j + sum_{i not in R} lam_i c_i prod_R x_j
    out = Polynomial.zero(n)
    full = _boundary_product(n, R)
    for i, (c, l) in enumerate(zip(comps, lam), 1):
        if l and c:
            mono = _boundary_product(n, R - {i}) if i in R else full
            out = out + (c * mono).scale(l)
    return out


def omega_contract(v: VectorField, lam: Sequence, R: Iterable[int]) -> Polynomial:
    """``(prod_{j in R} x_j) * omega(v)`` for the log form with coefficients ``lam``."""
    n = v.dimension
    return _contract(v.components, _lambda(lam, n), _check_boundary(R, n), n)


def f_from_matrix(A: RationalMatrix, lam: Sequence, R: Iterable[int]) -> Polynomial:
    """The contraction above for the linear field with component forms ``A_i = sum_j a_ij x_j``."""
    n = A.order
    forms = [Polynomial(n, {tuple(int(k == j) for k in range(n)): A.entries[i][j] for j in range(n)}) for i in range(n)]
    return _contract(forms, _lambda(lam, n), _check_boundary(R, n), n)


def proportionality_constant(p: Polynomial, q: Polynomial) -> Fraction | None:
    """``c != 0`` with ``p == c * q``; None if there is none (both zero gives 1)."""
    if p.is_zero() and q.is_zero():
        return Fraction(1)
    if p.is_zero() or q.is_zero() or p.support != q.support:
        return None
    alpha = next(iter(q.support))
    c = p.coefficient(alpha) / q.coefficient(alpha)
    return c if p == q.scale(c) else None


# ---------------------------------------------------------------------------
# choosing lambda

def _rng(seed) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def _draw(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(*LAMBDA_RANGE))


def select_lambda(A: RationalMatrix, R: Iterable[int], seed=0) -> tuple[tuple[Fraction, ...], Certificate]:
    """Coefficients making ``f_from_matrix(A, lam, R)`` log canonical at 0, with a certificate.

    Follows the induction: empty boundary gives a nonzero linear form; a
    proper non-nilpotent principal submatrix (the smallest, then
    lexicographically first) is handled by restriction; otherwise ``A`` is a
    single cycle and either one coefficient already gives a reduced monomial
    or, with full boundary, general coefficients give a Newton polyhedron
    with threshold 1.
    """
    n = A.order
    R = _check_boundary(R, n)
    if is_nilpotent(A):
        raise FoliationError("the matrix is nilpotent")
    return _select(A, R, _rng(seed))


def _select(A: RationalMatrix, R: frozenset[int], rng: random.Random):
    n = A.order
    zero = Fraction(0)

    if not R:
        for _ in range(MAX_REDRAWS):
            lam = tuple(_draw(rng) for _ in range(n))
            if not f_from_matrix(A, lam, R).is_zero():
                return lam, SmoothLinear()
        # the row space is nonzero, so some unit vector works
        i = next(i for i in range(n) if any(A.entries[i]))
        return tuple(Fraction(int(k == i)) for k in range(n)), SmoothLinear()

    if n == 1:
        return (Fraction(1),), SmoothLinear()

    I = first_non_nilpotent_proper(A)
    if I is not None:
        sub = principal_submatrix(A, I)
        R_sub = frozenset(k for k, i in enumerate(I, 1) if i in R)
        lam_sub, child = _select(sub, R_sub, rng)
        lam = [zero] * n
        for i, l in zip(I, lam_sub):
            lam[i - 1] = l
        K = tuple(sorted(R - set(I)))
        return tuple(lam), Restriction(tuple(I), K, child)

    cls = classify_special(A)
    sigma = cls.permutation
    succ = {sigma[k]: sigma[(k + 1) % n] for k in range(n)}
    if len(R) < n:
        i = min(i for i in R if succ[i] not in R)
        return tuple(Fraction(int(k == i)) for k in range(1, n + 1)), ReducedSncMonomial()

    lam = tuple(_draw(rng) for _ in range(n))
    f = f_from_matrix(A, lam, R)
    res = lct_monomial(MonomialIdeal.from_support(f))
    return lam, MonomialGenericHowald(res.value, lam, GENERICITY_ASSUMPTION)


# ---------------------------------------------------------------------------
# the divisor Gamma

@dataclass(frozen=True)
class GammaResult:
    gamma: Polynomial
    certificate: Certificate
    lam: tuple[Fraction, ...]
    case: int
    redraws: int = 0
    transverse_index: int | None = None
    expected_lowest_part: Polynomial | None = None


def gamma_construct(
    v: VectorField,
    R: Iterable[int],
    delta: Polynomial | None = None,
    seed=0,
) -> GammaResult:
    """Build ``Gamma = div(prod_R x_j * omega(v))`` with a log canonicity certificate at 0.

    Singular ``v`` (case 1): choose ``lam`` for the linear part and check that
    the lowest part of ``Gamma`` is exactly the polynomial certified for the
    linear part, re-drawing the random choices when it is not.  Nonsingular
    ``v`` (case 2): ``lam`` is the unit vector of an index ``s`` with
    ``a_s(0) != 0``, chosen so that ``delta`` (if it passes through 0) is
    transverse to the remaining boundary hyperplanes.
    """
    n = v.dimension
    R = _check_boundary(R, n)
    verdict = mp_classify(v)
    if verdict.tag == NOT_LC:
        raise FoliationError("the foliation is not log canonical at the origin")
    if not validate_pair(v, delta):
        raise FoliationError("the invariant divisor passes through a singular point")

    if verdict.tag == LOG_CANONICAL:
        A = verdict.linear_part
        rng = _rng(seed)
        ones = (1,) * n
        for attempt in range(MAX_REDRAWS + 1):
            lam, cert = _select(A, R, rng)
            gamma = omega_contract(v, lam, R)
            f = f_from_matrix(A, lam, R)
            if not gamma.is_zero() and not f.is_zero() and weighted_lowest_part(gamma, ones) == f:
                full = LowestPartReduction(ones, f, cert)
                return GammaResult(gamma, full, lam, 1, attempt, expected_lowest_part=f)
        raise RetryBudgetExhausted(
            f"lowest part of Gamma differed from the linear-part polynomial in {MAX_REDRAWS + 1} draws"
        )

    a0 = v.at_origin()
    candidates = [s for s in range(1, n + 1) if a0[s - 1] != 0]
    if delta is not None and delta.constant_term() == 0:
        if delta.dimension != n:
            raise ValueError("divisor and vector field live in different dimensions")
        if evaluate(v.apply(delta), [0] * n) == 0:
            raise FoliationError("the divisor is not transverse to the foliation at 0")
        grad = [evaluate(partial_derivative(delta, i), [0] * n) for i in range(1, n + 1)]
        candidates = [s for s in candidates if grad[s - 1] != 0]
        pair_delta = delta
    else:
        pair_delta = None
    s = candidates[0]
    lam = tuple(Fraction(int(k == s)) for k in range(1, n + 1))
    gamma = omega_contract(v, lam, R)
    ones = (1,) * n
    low = weighted_lowest_part(gamma, ones)
    cert = PairSnc(s, pair_delta, LowestPartReduction(ones, low, ReducedSncMonomial()))
    return GammaResult(gamma, cert, lam, 2, 0, transverse_index=s, expected_lowest_part=low)

