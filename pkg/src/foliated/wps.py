"""Degree bookkeeping for foliations on weighted projective spaces.

A foliation on ``P(w_0, ..., w_N)`` is given by a homogeneous 1-form
``omega = sum_i A_i dX_i`` with every ``deg_w(A_i) + w_i`` equal to the weight
of the form.  On a weighted projective plane the canonical class of the
foliation is ``O(weight - sum(w))`` and ``O(d) . O(e) = d e / (w_0 w_1 w_2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .foliation import VectorField
from .poly import Polynomial, parse_polynomial_list, weighted_lowest_part, weighted_order

__all__ = [
    "WpsWeights",
    "HomogeneousOneForm",
    "AffineChart",
    "NotEquiWeighted",
    "parse_weights",
    "parse_form",
    "form_weight",
    "euler_contraction",
    "foliation_canonical_degree",
    "self_intersection",
    "dehomogenize",
    "annihilator_2d",
    "cubic_toric_form",
]


class NotEquiWeighted(ValueError):
    pass


@dataclass(frozen=True)
class WpsWeights:
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if not w or any(x < 1 for x in w):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, k: int) -> int:
        return self.weights[k]


@dataclass(frozen=True)
class HomogeneousOneForm:
    """``sum_i A_i dX_i`` in the homogeneous coordinates ``X_0..X_N`` (variables ``x1..x{N+1}``)."""

    components: tuple[Polynomial, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if any(c.dimension != len(comps) for c in comps):
            raise ValueError("each component must be a polynomial in all homogeneous coordinates")
        object.__setattr__(self, "components", comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def multiply(self, p: Polynomial) -> HomogeneousOneForm:
        return HomogeneousOneForm(tuple(c * p for c in self.components))


def parse_weights(text: str) -> WpsWeights:
    return WpsWeights(tuple(int(t) for t in text.split(",")))


def parse_form(text: str, weights: WpsWeights) -> HomogeneousOneForm:
    return HomogeneousOneForm(tuple(parse_polynomial_list(text, len(weights))))


def cubic_toric_form(n: int) -> tuple[HomogeneousOneForm, WpsWeights]:
    """``X^2 Z dX + Y^2 Z dY - (X^3 + Y^3) dZ`` on ``P(1, 1, n)``."""
    comps = parse_polynomial_list("x^2*z, y^2*z, -(x^3+y^3)", 3)
    return HomogeneousOneForm(tuple(comps)), WpsWeights((1, 1, n))


def _check(omega: HomogeneousOneForm, w: WpsWeights) -> None:
    if len(omega.components) != len(w):
        raise ValueError(f"form has {len(omega.components)} components for {len(w)} weights")


def form_weight(omega: HomogeneousOneForm, w: WpsWeights) -> int:
    _check(omega, w)
    if omega.is_zero():
        raise NotEquiWeighted("the zero form has no weight")
    weights = set()
    for a, wi in zip(omega.components, w):
        if a.is_zero():
            continue
        if weighted_lowest_part(a, w.weights) != a:
            raise NotEquiWeighted(f"component {a} is not weighted homogeneous")
        weights.add(weighted_order(a, w.weights) + wi)
    if len(weights) != 1:
        raise NotEquiWeighted(f"components have different weights {sorted(weights)}")
    return weights.pop()


def euler_contraction(omega: HomogeneousOneForm, w: WpsWeights) -> Polynomial:
    """``sum_i w_i X_i A_i``; it vanishes exactly when the form descends."""
    _check(omega, w)
    N = len(w)
    out = Polynomial.zero(N)
    for i, (a, wi) in enumerate(zip(omega.components, w), 1):
        out = out + (Polynomial.variable(i, N) * a).scale(wi)
    return out


def foliation_canonical_degree(omega: HomogeneousOneForm, w: WpsWeights) -> int:
    if len(w) != 3:
        raise ValueError("the canonical degree is only implemented on weighted projective planes")
    return form_weight(omega, w) - sum(w)


def self_intersection(d: int, e: int, w: WpsWeights) -> Fraction:
    if len(w) != 3:
        raise ValueError("intersection numbers need exactly three weights")
    return Fraction(d * e, w[0] * w[1] * w[2])


@dataclass(frozen=True)
class AffineChart:
    """The form on the chart ``X_k = 1``; the chart is the quotient of this
    affine space by the cyclic group of order ``w_k`` acting with weights
    ``quotient_weights`` (recorded, not acted on)."""

    chart: int
    components: tuple[Polynomial, ...]
    cyclic_order: int
    quotient_weights: tuple[int, ...]


def dehomogenize(omega: HomogeneousOneForm, chart: int, w: WpsWeights) -> AffineChart:
    """Set ``X_chart = 1`` (0-based ``chart``) and drop the ``dX_chart`` term."""
    _check(omega, w)
    N = len(w)
    if not 0 <= chart < N:
        raise ValueError(f"chart index {chart} out of range 0..{N - 1}")
    keep = [i for i in range(N) if i != chart]
    comps = []
    for i in keep:
        a = omega.components[i]
        terms = {}
        for alpha, c in a.terms.items():
            beta = tuple(alpha[j] for j in keep)
            terms[beta] = terms.get(beta, 0) + c
        comps.append(Polynomial(N - 1, terms))
    wk = w[chart]
    return AffineChart(chart, tuple(comps), wk, tuple(w[i] % wk for i in keep))


def annihilator_2d(P: Polynomial, Q: Polynomial) -> VectorField:
    """The field ``Q d/dx - P d/dy`` killed by ``P dx + Q dy``."""
    if P.dimension != 2 or Q.dimension != 2:
        raise ValueError("annihilator_2d needs a form in two variables")
    if P.is_zero() and Q.is_zero():
        raise ValueError("the zero form has no annihilator")
    return VectorField((Q, -P))
