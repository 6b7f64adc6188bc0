"""Machine-checkable log canonicity certificates for hypersurface germs at 0.

A certificate is a small tree.  Leaves are facts that are checked directly
(smooth, reduced normal crossing monomial, Newton polyhedron bound under a
genericity assumption); inner nodes reduce to a simpler polynomial:

* ``Restriction`` peels off coordinate factors and restricts to a coordinate
  subspace (inversion of adjunction along coordinate hyperplanes);
* ``LowestPartReduction`` passes to a weighted initial form (degeneration to
  the initial form preserves log canonicity in the direction we need);
* ``PairSnc`` adds a smooth divisor transverse to a monomial one.

:func:`verify_certificate` re-derives every claim with exact arithmetic; it
never trusts the values stored in a node beyond what it recomputes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .newton import MonomialIdeal, lct_monomial
from .poly import Infinity, Polynomial, format_fraction, parse_polynomial, weighted_lowest_part

__all__ = [
    "SmoothLinear",
    "ReducedSncMonomial",
    "MonomialGenericHowald",
    "Restriction",
    "LowestPartReduction",
    "PairSnc",
    "Certificate",
    "MalformedCertificate",
    "verify_certificate",
    "certificate_to_json",
    "certificate_from_json",
    "GENERICITY_ASSUMPTION",
]

GENERICITY_ASSUMPTION = (
    "coefficients drawn uniformly from 1..10^6 are assumed general: the lct of the "
    "combination equals the lct of the monomial ideal of its support"
)


class MalformedCertificate(ValueError):
    pass


@dataclass(frozen=True)
class SmoothLinear:
    """The germ has a nonzero linear part, hence is smooth at 0."""


@dataclass(frozen=True)
class ReducedSncMonomial:
    """The polynomial is a nonzero constant times a squarefree monomial."""


@dataclass(frozen=True)
class MonomialGenericHowald:
    lct: Fraction
    coefficients: tuple[Fraction, ...]
    assumption: str = GENERICITY_ASSUMPTION


@dataclass(frozen=True)
class Restriction:
    """``f = prod_{j in K} x_j * g`` and ``g`` restricted to ``{x_j = 0, j not in I}``."""

    index_set: tuple[int, ...]
    factors: tuple[int, ...]
    child: Certificate


@dataclass(frozen=True)
class LowestPartReduction:
    weights: tuple[int, ...]
    lowest_part: Polynomial
    child: Certificate


@dataclass(frozen=True)
class PairSnc:
    """The divisor together with a smooth ``delta`` crossing it transversally.

    ``delta`` is None when no extra divisor passes through the origin; then
    the node only asks the child to certify the polynomial itself.
    ``transverse_index`` is the variable along which ``delta``'s linear part
    leaves the span of the monomial's coordinate hyperplanes.
    """

    transverse_index: int
    delta: Polynomial | None
    child: Certificate


Certificate = Union[SmoothLinear, ReducedSncMonomial, MonomialGenericHowald, Restriction, LowestPartReduction, PairSnc]


def _is_squarefree_monomial(p: Polynomial) -> bool:
    return p.is_monomial() and max(next(iter(p.support)), default=0) <= 1


def _check(f: Polynomial, cert) -> bool:
    if isinstance(cert, SmoothLinear):
        if f.is_zero() or f.constant_term() != 0:
            return False
        return not f.homogeneous_part(1).is_zero()

    if isinstance(cert, ReducedSncMonomial):
        return _is_squarefree_monomial(f)

    if isinstance(cert, MonomialGenericHowald):
        if f.is_zero() or f.constant_term() != 0:
            return False
        if not cert.coefficients or any(c == 0 for c in cert.coefficients):
            return False
        res = lct_monomial(MonomialIdeal.from_support(f))
        if isinstance(res, Infinity) or not res.verify():
            return False
        return res.value >= 1 and res.value == cert.lct

    if isinstance(cert, Restriction):
        n = f.dimension
        I, K = tuple(cert.index_set), tuple(cert.factors)
        if not I or list(I) != sorted(set(I)) or I[0] < 1 or I[-1] > n:
            raise MalformedCertificate(f"bad index set {I}")
        if set(I) & set(K) or any(not 1 <= k <= n for k in K) or len(set(K)) != len(K):
            raise MalformedCertificate(f"bad factor set {K}")
        alpha = [0] * n
        for k in K:
            alpha[k - 1] = 1
        g = f.divide_by_monomial(alpha)
        if g is None:
            return False
        restricted = g.restrict(I)
        # a nonzero restriction also shows no x_j with j outside I divides g
        if restricted.is_zero():
            return False
        return _check(restricted, cert.child)

    if isinstance(cert, LowestPartReduction):
        if len(cert.weights) != f.dimension or min(cert.weights, default=1) < 1:
            raise MalformedCertificate(f"bad weight vector {cert.weights}")
        if f.is_zero():
            return False
        low = weighted_lowest_part(f, cert.weights)
        if low != cert.lowest_part:
            return False
        return _check(low, cert.child)

    if isinstance(cert, PairSnc):
        if not _check(f, cert.child):
            return False
        delta = cert.delta
        if delta is None or delta.constant_term() != 0:
            return True
        if delta.dimension != f.dimension:
            return False
        s = cert.transverse_index
        linear = delta.homogeneous_part(1)
        e_s = tuple(int(k == s - 1) for k in range(f.dimension))
        if linear.coefficient(e_s) == 0:
            return False
        if f.constant_term() != 0:
            return True
        low = weighted_lowest_part(f)
        if not _is_squarefree_monomial(low):
            return False
        (alpha,) = low.support
        return alpha[s - 1] == 0

    raise MalformedCertificate(f"unknown certificate node {type(cert).__name__}")


def verify_certificate(f: Polynomial, cert: Certificate) -> bool:
    """True iff every node of ``cert`` re-checks on ``f``.

    Raises :class:`MalformedCertificate` for structurally invalid trees.
    """
    return _check(f, cert)


# ---------------------------------------------------------------------------
# JSON round trip

def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, SmoothLinear):
        return {"kind": "SmoothLinear"}
    if isinstance(cert, ReducedSncMonomial):
        return {"kind": "ReducedSncMonomial"}
    if isinstance(cert, MonomialGenericHowald):
        return {
            "kind": "MonomialGenericHowald",
            "lct": format_fraction(cert.lct),
            "coefficients": [format_fraction(c) for c in cert.coefficients],
            "assumption": cert.assumption,
        }
    if isinstance(cert, Restriction):
        return {
            "kind": "Restriction",
            "index_set": list(cert.index_set),
            "factors": list(cert.factors),
            "child": certificate_to_json(cert.child),
        }
    if isinstance(cert, LowestPartReduction):
        return {
            "kind": "LowestPartReduction",
            "weights": list(cert.weights),
            "dimension": cert.lowest_part.dimension,
            "lowest_part": str(cert.lowest_part),
            "child": certificate_to_json(cert.child),
        }
    if isinstance(cert, PairSnc):
        return {
            "kind": "PairSnc",
            "transverse_index": cert.transverse_index,
            "dimension": None if cert.delta is None else cert.delta.dimension,
            "delta": None if cert.delta is None else str(cert.delta),
            "child": certificate_to_json(cert.child),
        }
    raise MalformedCertificate(f"unknown certificate node {type(cert).__name__}")


def certificate_from_json(data: dict) -> Certificate:
    try:
        kind = data["kind"]
        if kind == "SmoothLinear":
            return SmoothLinear()
        if kind == "ReducedSncMonomial":
            return ReducedSncMonomial()
        if kind == "MonomialGenericHowald":
            return MonomialGenericHowald(
                Fraction(data["lct"]),
                tuple(Fraction(c) for c in data["coefficients"]),
                data.get("assumption", GENERICITY_ASSUMPTION),
            )
        if kind == "Restriction":
            return Restriction(
                tuple(data["index_set"]), tuple(data["factors"]), certificate_from_json(data["child"])
            )
        if kind == "LowestPartReduction":
            return LowestPartReduction(
                tuple(data["weights"]),
                parse_polynomial(data["lowest_part"], data["dimension"]),
                certificate_from_json(data["child"]),
            )
        if kind == "PairSnc":
            delta = data.get("delta")
            return PairSnc(
                data["transverse_index"],
                None if delta is None else parse_polynomial(delta, data["dimension"]),
                certificate_from_json(data["child"]),
            )
    except (KeyError, TypeError) as exc:
        raise MalformedCertificate(f"missing or bad field: {exc}") from None
    raise MalformedCertificate(f"unknown certificate kind {data.get('kind')!r}")
