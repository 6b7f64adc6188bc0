"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` lives in a fixed number of variables ``x1..xn`` and
stores a map from exponent tuples to nonzero :class:`fractions.Fraction`
coefficients.  Values are immutable and hashable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "INFINITY",
    "Infinity",
    "ParseError",
    "Polynomial",
    "parse_polynomial",
    "parse_polynomial_list",
    "infer_dimension",
    "partial_derivative",
    "weighted_order",
    "weighted_lowest_part",
    "evaluate",
    "as_fraction",
    "format_fraction",
]

Exponent = tuple[int, ...]


@total_ordering
class Infinity:
    """The value ``+inf`` for orders of the zero polynomial and unit ideals."""

    _instance: Infinity | None = None

    def __new__(cls) -> Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __add__(self, other: object) -> Infinity:
        return self

    __radd__ = __add__

    def __hash__(self) -> int:
        return hash("Infinity")

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "infinity"


INFINITY = Infinity()


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction. Floats are rejected."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_fraction(value: Fraction) -> str:
    """Always ``p/q``, so ``1`` prints as ``1/1``."""
    value = as_fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _grlex_key(alpha: Exponent):
    return (sum(alpha), alpha)


class Polynomial:
    """An immutable polynomial in ``x1..xn`` over the rationals."""

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, dimension: int, terms: Mapping[Sequence[int], object] | None = None):
        if dimension < 0:
            raise ValueError("dimension must be non-negative")
        clean: dict[Exponent, Fraction] = {}
        for alpha, coeff in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != dimension:
                raise ValueError(f"exponent {alpha} does not have length {dimension}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            c = clean.get(alpha, Fraction(0)) + as_fraction(coeff)
            if c:
                clean[alpha] = c
            else:
                clean.pop(alpha, None)
        self._n = dimension
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, dimension: int, terms: dict[Exponent, Fraction]) -> Polynomial:
        # terms must already be clean: right length, no zero coefficients
        p = cls.__new__(cls)
        p._n = dimension
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, dimension: int) -> Polynomial:
        return cls._raw(dimension, {})

    @classmethod
    def constant(cls, value, dimension: int) -> Polynomial:
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def variable(cls, index: int, dimension: int) -> Polynomial:
        """The coordinate ``x_index`` (1-based)."""
        if not 1 <= index <= dimension:
            raise IndexError(f"variable index {index} out of range 1..{dimension}")
        alpha = [0] * dimension
        alpha[index - 1] = 1
        return cls._raw(dimension, {tuple(alpha): Fraction(1)})

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff=1) -> Polynomial:
        return cls(len(alpha), {tuple(alpha): coeff})

    # basic accessors

    @property
    def dimension(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in graded-lex order, largest first."""
        for alpha in sorted(self._terms, key=_grlex_key, reverse=True):
            yield alpha, self._terms[alpha]

    @property
    def support(self) -> frozenset[Exponent]:
        return frozenset(self._terms)

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self._n)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(sum(a) for a in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # arithmetic

    def _check(self, other: Polynomial) -> None:
        if other._n != self._n:
            raise ValueError(f"dimension mismatch: {self._n} vs {other._n}")

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(as_fraction(other), self._n)

    def __add__(self, other) -> Polynomial:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for alpha, c in other._terms.items():
            s = out.get(alpha, 0) + c
            if s:
                out[alpha] = s
            else:
                out.pop(alpha, None)
        return Polynomial._raw(self._n, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self._n, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, c) -> Polynomial:
        c = as_fraction(c)
        if not c:
            return Polynomial.zero(self._n)
        return Polynomial._raw(self._n, {a: c * v for a, v in self._terms.items()})

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                g = tuple(x + y for x, y in zip(a, b))
                s = out.get(g, 0) + c * d
                if s:
                    out[g] = s
                else:
                    out.pop(g, None)
        return Polynomial._raw(self._n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1, self._n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._n == other._n and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(other, self._n)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    # structural operations

    def homogeneous_part(self, degree: int, weights: Sequence[int] | None = None) -> Polynomial:
        w = tuple(weights) if weights is not None else (1,) * self._n
        return Polynomial._raw(
            self._n,
            {a: c for a, c in self._terms.items() if sum(x * y for x, y in zip(w, a)) == degree},
        )

    def substitute_zero(self, indices: Iterable[int]) -> Polynomial:
        """Set ``x_j = 0`` for the given 1-based indices (dimension unchanged)."""
        idx = [j - 1 for j in indices]
        return Polynomial._raw(
            self._n, {a: c for a, c in self._terms.items() if all(a[j] == 0 for j in idx)}
        )

    def restrict(self, keep: Sequence[int]) -> Polynomial:
        """Restrict to the coordinate subspace spanned by ``keep`` (1-based, sorted).

        The other coordinates are set to zero and the kept ones are renumbered
        ``1..len(keep)`` in increasing order.
        """
        keep = sorted(keep)
        drop = [j for j in range(1, self._n + 1) if j not in keep]
        out = {}
        for a, c in self.substitute_zero(drop)._terms.items():
            out[tuple(a[j - 1] for j in keep)] = c
        return Polynomial._raw(len(keep), out)

    def embed(self, positions: Sequence[int], dimension: int) -> Polynomial:
        """Inverse of :meth:`restrict`: variable ``k`` becomes ``x_{positions[k]}``."""
        if len(positions) != self._n:
            raise ValueError("need one position per variable")
        out = {}
        for a, c in self._terms.items():
            b = [0] * dimension
            for e, p in zip(a, positions):
                b[p - 1] = e
            out[tuple(b)] = c
        return Polynomial._raw(dimension, out)

    def divide_by_monomial(self, alpha: Sequence[int]) -> Polynomial | None:
        """Exact quotient by ``x^alpha``; ``None`` when some term is not divisible."""
        alpha = tuple(alpha)
        out = {}
        for a, c in self._terms.items():
            b = tuple(x - y for x, y in zip(a, alpha))
            if min(b, default=0) < 0:
                return None
            out[b] = c
        return Polynomial._raw(self._n, out)

    def variables(self) -> frozenset[int]:
        """1-based indices of the variables that actually occur."""
        return frozenset(i + 1 for a in self._terms for i, e in enumerate(a) if e)

    # printing

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i}" for i in range(1, self._n + 1)]
        if not self._terms:
            return "0"
        parts = []
        for alpha, c in self.items():
            factors = []
            for name, e in zip(names, alpha):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self._n}, {self.to_string()!r})"


# ---------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    """Malformed polynomial text; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+|[xyz])|([-+*/^(),]))")
_ALIASES = {"x": 1, "y": 2, "z": 3}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _variable_index(name: str, dimension: int, pos: int, text: str) -> int:
    if name in _ALIASES:
        if dimension > 3:
            raise ParseError(f"alias {name!r} is only allowed with at most 3 variables", pos, text)
        idx = _ALIASES[name]
    else:
        idx = int(name[1:])
    if not 1 <= idx <= dimension:
        raise ParseError(f"unknown variable {name!r} for dimension {dimension}", pos, text)
    return idx


class _Parser:
    def __init__(self, text: str, dimension: int):
        self.text = text
        self.n = dimension
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos, self.text)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos, self.text)
        return p

    def expr(self) -> Polynomial:
        kind, val, pos = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        kind, val, pos = self.peek()
        if kind == "int":
            acc = Polynomial.constant(self.coeff(), self.n)
        else:
            acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def coeff(self) -> Fraction:
        _, num, _ = self.take()
        if self.peek()[:2] == ("op", "/"):
            self.take()
            kind, den, pos = self.take()
            if kind != "int" or int(den) == 0:
                raise ParseError("expected positive integer denominator", pos, self.text)
            return Fraction(int(num), int(den))
        return Fraction(int(num))

    def factor(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "var":
            base = Polynomial.variable(_variable_index(val, self.n, pos, self.text), self.n)
        elif kind == "op" and val == "(":
            base = self.expr()
            self.expect(")")
        elif kind == "int":
            # a bare coefficient after '*', e.g. x*2
            self.i -= 1
            return Polynomial.constant(self.coeff(), self.n)
        else:
            raise ParseError(f"expected variable or '(', found {val or 'end of input'!r}", pos, self.text)
        if self.peek()[:2] == ("op", "^"):
            self.take()
            k, e, epos = self.take()
            if k != "int":
                raise ParseError("expected exponent", epos, self.text)
            base = base ** int(e)
        return base


def parse_polynomial(text: str, dimension: int) -> Polynomial:
    """Parse ``text`` in the variables ``x1..xn`` (``x, y, z`` allowed when n <= 3)."""
    return _Parser(text, dimension).parse()


def _split_top_level(text: str, sep: str = ",") -> list[tuple[str, int]]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts


def parse_polynomial_list(text: str, dimension: int) -> list[Polynomial]:
    """Comma-separated polynomials; commas inside parentheses do not split."""
    out = []
    for chunk, offset in _split_top_level(text):
        if not chunk.strip():
            raise ParseError("empty entry", offset, text)
        try:
            out.append(parse_polynomial(chunk, dimension))
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" at position", 1)[0], exc.position + offset, text) from None
    return out


def infer_dimension(text: str) -> int:
    """Smallest dimension in which every variable name in ``text`` is legal."""
    n = 0
    for m in re.finditer(r"x(\d+)|([xyz])(?!\d)", text):
        n = max(n, int(m.group(1)) if m.group(1) else _ALIASES[m.group(2)])
    return max(n, 1)


# ---------------------------------------------------------------------------
# functional interface

def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    if not 1 <= i <= p.dimension:
        raise IndexError(f"variable index {i} out of range 1..{p.dimension}")
    k = i - 1
    out = {}
    for a, c in p._terms.items():
        if a[k]:
            b = a[:k] + (a[k] - 1,) + a[k + 1:]
            out[b] = c * a[k]
    return Polynomial._raw(p.dimension, out)


def _check_weights(w: Sequence[int], n: int) -> tuple[int, ...]:
    w = tuple(int(x) for x in w)
    if len(w) != n:
        raise ValueError(f"weight vector has length {len(w)}, expected {n}")
    if any(x < 1 for x in w):
        raise ValueError("weights must be positive integers")
    return w


def weighted_order(p: Polynomial, w: Sequence[int]) -> int | Infinity:
    """Minimum of ``<w, alpha>`` over the support; :data:`INFINITY` for zero."""
    w = _check_weights(w, p.dimension)
    if p.is_zero():
        return INFINITY
    return min(sum(x * y for x, y in zip(w, a)) for a in p._terms)


def weighted_lowest_part(p: Polynomial, w: Sequence[int] | None = None) -> Polynomial:
    """Sum of the terms of minimal ``w``-weight (ordinary lowest-degree part by default)."""
    if w is None:
        w = (1,) * p.dimension
    if p.is_zero():
        raise ValueError("the zero polynomial has no lowest part")
    order = weighted_order(p, w)
    return p.homogeneous_part(order, w)


def evaluate(p: Polynomial, point: Sequence) -> Fraction:
    if len(point) != p.dimension:
        raise ValueError(f"point has length {len(point)}, expected {p.dimension}")
    pt = [as_fraction(v) for v in point]
    total = Fraction(0)
    for a, c in p._terms.items():
        term = c
        for v, e in zip(pt, a):
            if e:
                term *= v ** e
        total += term
    return total
