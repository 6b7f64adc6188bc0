"""Exact square matrices, nilpotency, and the directed graph of a matrix.

The graph ``G(A)`` has vertices ``1..n`` and an edge ``i -> j`` whenever
``a_ij != 0``.  When every proper principal submatrix of ``A`` is nilpotent,
``A`` is either nilpotent itself or, after relabelling, a single cycle
``a_12, a_23, ..., a_n1`` with every other entry zero; :func:`classify_special`
decides which and returns the relabelling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .poly import ParseError, Polynomial, as_fraction, format_fraction

__all__ = [
    "RationalMatrix",
    "CycleClassification",
    "HypothesisViolated",
    "parse_matrix",
    "is_nilpotent",
    "principal_submatrix",
    "adjacency_graph",
    "shortest_cycle_length",
    "proper_principal_index_sets",
    "first_non_nilpotent_proper",
    "classify_special",
    "characteristic_polynomial",
]


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(x) for x in row) for row in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> RationalMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, n: int) -> RationalMatrix:
        return cls(tuple((Fraction(0),) * n for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def order(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        """1-based entry access ``A[i, j]``."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i - 1]

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        n = self.order
        if other.order != n:
            raise ValueError("order mismatch")
        cols = list(zip(*other.entries))
        return RationalMatrix(
            tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols) for r in self.entries)
        )

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        return RationalMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        )

    def scale(self, c) -> RationalMatrix:
        c = as_fraction(c)
        return RationalMatrix(tuple(tuple(c * a for a in r) for r in self.entries))

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(tuple(zip(*self.entries)))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def power(self, k: int) -> RationalMatrix:
        result = RationalMatrix.identity(self.order)
        for _ in range(k):
            result = result @ self
        return result

    def permuted(self, sigma: Sequence[int]) -> RationalMatrix:
        """``B[k][l] = A[sigma[k]][sigma[l]]`` (1-based labels in ``sigma``)."""
        return RationalMatrix(tuple(tuple(self[s, t] for t in sigma) for s in sigma))

    def to_text(self) -> str:
        return ";".join(",".join(format_fraction(a) for a in r) for r in self.entries)

    def to_json(self) -> list[list[str]]:
        return [[format_fraction(a) for a in r] for r in self.entries]

    def __str__(self) -> str:
        return self.to_text()


def parse_matrix(text: str) -> RationalMatrix:
    """Rows separated by ``;``, entries by ``,``; entries are integers or ``p/q``."""
    rows = []
    offset = 0
    for row_text in text.split(";"):
        row = []
        pos = offset
        for entry in row_text.split(","):
            try:
                row.append(Fraction(entry.strip()))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad matrix entry {entry.strip()!r}", pos, text) from None
            pos += len(entry) + 1
        rows.append(row)
        offset += len(row_text) + 1
    if any(len(r) != len(rows) for r in rows):
        raise ParseError("matrix is not square", 0, text)
    return RationalMatrix.of(rows)


def is_nilpotent(A: RationalMatrix) -> bool:
    """True iff ``A^n = 0``."""
    n = A.order
    if n == 0:
        return True
    P = A
    # repeated squaring up to the first power >= n
    k = 1
    while k < n:
        P = P @ P
        k *= 2
    return P.is_zero()


def principal_submatrix(A: RationalMatrix, I: Iterable[int]) -> RationalMatrix:
    idx = sorted(set(I))
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 1 or idx[-1] > A.order:
        raise ValueError(f"index set {idx} not contained in 1..{A.order}")
    return A.permuted(idx)


def adjacency_graph(A: RationalMatrix) -> dict[int, tuple[int, ...]]:
    """Out-neighbour lists of ``G(A)``; self-loops included."""
    n = A.order
    return {i: tuple(j for j in range(1, n + 1) if A[i, j] != 0) for i in range(1, n + 1)}


def shortest_cycle_length(A: RationalMatrix) -> int | None:
    """Length of a shortest directed cycle of ``G(A)``, a self-loop counting as 1."""
    graph = adjacency_graph(A)
    best = None
    for start in graph:
        # BFS distances from start; a cycle through start closes on an edge back to it
        dist = {start: 0}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in graph[u]:
                if v == start:
                    length = dist[u] + 1
                    if best is None or length < best:
                        best = length
                elif v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
    return best


def proper_principal_index_sets(n: int) -> Iterable[tuple[int, ...]]:
    """Nonempty proper subsets of ``1..n``, by size then lexicographically."""
    for k in range(1, n):
        yield from combinations(range(1, n + 1), k)


def first_non_nilpotent_proper(A: RationalMatrix) -> tuple[int, ...] | None:
    """Smallest (then lexicographically first) proper ``I`` with ``A(I)`` non-nilpotent."""
    for I in proper_principal_index_sets(A.order):
        if not is_nilpotent(principal_submatrix(A, I)):
            return I
    return None


class HypothesisViolated(ValueError):
    """Some proper principal submatrix is not nilpotent; ``witness`` is its index set."""

    def __init__(self, witness: tuple[int, ...]):
        self.witness = witness
        super().__init__(f"principal submatrix on {list(witness)} is not nilpotent")


@dataclass(frozen=True)
class CycleClassification:
    tag: str  # "Nilpotent" or "CycleForm"
    permutation: tuple[int, ...] | None = None
    cycle_entries: tuple[Fraction, ...] | None = None

    NILPOTENT = "Nilpotent"
    CYCLE_FORM = "CycleForm"

    @property
    def is_cycle_form(self) -> bool:
        return self.tag == self.CYCLE_FORM

    def reassemble(self, n: int) -> RationalMatrix:
        """Rebuild the matrix from the cycle data (inverse of the classification)."""
        if not self.is_cycle_form:
            raise ValueError("only a cycle form can be reassembled")
        rows = [[Fraction(0)] * n for _ in range(n)]
        sigma = self.permutation
        for k in range(n):
            rows[sigma[k] - 1][sigma[(k + 1) % n] - 1] = self.cycle_entries[k]
        return RationalMatrix.of(rows)


def classify_special(A: RationalMatrix) -> CycleClassification:
    """Nilpotent, or the single ``n``-cycle exhibiting the cycle form.

    Requires every proper principal submatrix to be nilpotent and raises
    :class:`HypothesisViolated` otherwise.  In the cycle form, ``permutation``
    lists the vertices in cycle order starting at 1, so that
    ``A.permuted(permutation)`` has nonzero entries exactly at ``(k, k+1)``
    and ``(n, 1)``.
    """
    witness = first_non_nilpotent_proper(A)
    if witness is not None:
        raise HypothesisViolated(witness)
    if is_nilpotent(A):
        return CycleClassification(CycleClassification.NILPOTENT)
    n = A.order
    graph = adjacency_graph(A)
    if any(len(graph[i]) != 1 for i in graph):
        raise AssertionError("non-nilpotent matrix under the hypothesis is not a single cycle")
    order = [1]
    while len(order) < n:
        nxt = graph[order[-1]][0]
        if nxt in order:
            raise AssertionError("successor map is not a single n-cycle")
        order.append(nxt)
    if graph[order[-1]][0] != 1:
        raise AssertionError("successor map does not close up")
    entries = tuple(A[order[k], order[(k + 1) % n]] for k in range(n))
    return CycleClassification(CycleClassification.CYCLE_FORM, tuple(order), entries)


def characteristic_polynomial(A: RationalMatrix) -> Polynomial:
    """``det(tI - A)`` as a polynomial in one variable, by Berkowitz's division-free recursion."""
    n = A.order
    # coefficient vectors are highest degree first; start from the bottom-right 0x0 block
    coeffs = [Fraction(1)]
    for k in range(n - 1, -1, -1):
        a = A.entries[k][k]
        R = [A.entries[k][j] for j in range(k + 1, n)]
        C = [A.entries[i][k] for i in range(k + 1, n)]
        M = [[A.entries[i][j] for j in range(k + 1, n)] for i in range(k + 1, n)]
        m = n - k  # order of the current leading block
        column = [Fraction(1), -a]
        vec = C
        for _ in range(m - 1):
            column.append(-sum((r * v for r, v in zip(R, vec)), Fraction(0)))
            vec = [sum((row[j] * vec[j] for j in range(len(vec))), Fraction(0)) for row in M]
        # (m+1) x m lower-triangular Toeplitz product
        coeffs = [
            sum((column[i - j] * coeffs[j] for j in range(min(i, m - 1) + 1) if i - j < len(column)), Fraction(0))
            for i in range(m + 1)
        ]
    return Polynomial(1, {(n - i,): c for i, c in enumerate(coeffs)})
