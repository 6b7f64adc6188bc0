import random
from fractions import Fraction
from itertools import permutations

import pytest
import sympy

from foliated.matrix import (
    HypothesisViolated,
    RationalMatrix,
    adjacency_graph,
    characteristic_polynomial,
    classify_special,
    first_non_nilpotent_proper,
    is_nilpotent,
    parse_matrix,
    principal_submatrix,
    shortest_cycle_length,
)
from foliated.poly import ParseError, Polynomial, parse_polynomial
from foliated.selfcheck import oracle_cycle_form, random_cycle_matrix

M = RationalMatrix.of
CYCLE3 = M([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def test_nilpotency_examples():
    assert is_nilpotent(M([[0, 1], [0, 0]]))
    assert not is_nilpotent(M([[0, 1], [1, 0]]))
    assert not is_nilpotent(CYCLE3)
    assert is_nilpotent(RationalMatrix.zeros(4))


def test_principal_submatrix():
    A = M([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert principal_submatrix(A, (1, 3)) == M([[1, 3], [7, 9]])
    assert principal_submatrix(A, (1, 2, 3)) == A
    sub = principal_submatrix(CYCLE3, (1, 2))
    assert sub == M([[0, 1], [0, 0]]) and is_nilpotent(sub)
    with pytest.raises(ValueError):
        principal_submatrix(A, ())
    with pytest.raises(ValueError):
        principal_submatrix(A, (0, 1))


def test_adjacency_graph():
    assert adjacency_graph(M([[1, 0], [0, 2]])) == {1: (1,), 2: (2,)}
    assert adjacency_graph(M([[0, 1], [0, 0]])) == {1: (2,), 2: ()}
    assert adjacency_graph(CYCLE3) == {1: (2,), 2: (3,), 3: (1,)}


def test_shortest_cycle():
    assert shortest_cycle_length(M([[0, 1, 1], [0, 0, 1], [0, 0, 0]])) is None
    assert shortest_cycle_length(M([[1, 0, 0], [0, 0, 0], [0, 0, 0]])) == 1
    assert shortest_cycle_length(CYCLE3) == 3


def test_classify_examples():
    assert classify_special(M([[0, 1], [0, 0]])).tag == "Nilpotent"
    A = M([[0, 0, 5], [7, 0, 0], [0, -2, 0]])
    cls = classify_special(A)
    assert cls.tag == "CycleForm"
    assert cls.permutation == (1, 3, 2)
    assert cls.reassemble(3) == A
    # the brute-force search over all 6 orderings agrees up to rotation
    assert oracle_cycle_form(A) in {(1, 3, 2), (3, 2, 1), (2, 1, 3)}
    with pytest.raises(HypothesisViolated) as exc:
        classify_special(M([[1, 0], [0, 0]]))
    assert exc.value.witness == (1,)


def test_cycle_form_round_trip_random():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 5)
        A = random_cycle_matrix(rng, n)
        cls = classify_special(A)
        assert cls.is_cycle_form
        assert cls.reassemble(n) == A
        B = A.permuted(cls.permutation)
        for k in range(n):
            for l in range(n):
                assert (B[k + 1, l + 1] != 0) == (l == (k + 1) % n)


def test_charpoly_examples():
    t = lambda s: parse_polynomial(s, 1)
    assert characteristic_polynomial(RationalMatrix.identity(2)) == t("x^2 - 2*x + 1")
    A = M([[0, 2, 0], [0, 0, 3], [Fraction(1, 2), 0, 0]])
    assert characteristic_polynomial(A) == t("x^3 - 3")
    assert characteristic_polynomial(RationalMatrix.zeros(3)) == t("x^3")


def _eval_matrix_poly(p: Polynomial, A: RationalMatrix) -> RationalMatrix:
    n = A.order
    out = RationalMatrix.zeros(n)
    for (k,), c in p.terms.items():
        out = out + A.power(k).scale(c)
    return out


def test_charpoly_against_sympy_and_cayley_hamilton():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 4)
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        A = M(rows)
        p = characteristic_polynomial(A)
        t = sympy.Symbol("t")
        ref = sympy.Matrix(rows).charpoly(t).all_coeffs()[::-1]
        assert all(p.coefficient((k,)) == Fraction(str(c)) for k, c in enumerate(ref))
        assert _eval_matrix_poly(p, A).is_zero()
        assert is_nilpotent(A) == (p == Polynomial.monomial((n,)))


def test_transpose_invariance():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 4)
        A = M([[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(n)] for _ in range(n)])
        assert is_nilpotent(A) == is_nilpotent(A.transpose())


def test_first_non_nilpotent_is_minimal():
    A = M([[0, 1, 0], [1, 0, 0], [0, 0, 3]])
    assert first_non_nilpotent_proper(A) == (3,)
    assert first_non_nilpotent_proper(CYCLE3) is None


def test_exhaustive_three_by_three_agrees_with_permutation_search():
    for bits in range(512):
        A = M([[(bits >> (3 * i + j)) & 1 for j in range(3)] for i in range(3)])
        if first_non_nilpotent_proper(A) is not None:
            continue
        sigma = oracle_cycle_form(A)
        assert (sigma is not None) == classify_special(A).is_cycle_form == (not is_nilpotent(A))


def test_parse_matrix():
    A = parse_matrix("0,1/2;-3,0")
    assert A == M([[0, Fraction(1, 2)], [-3, 0]])
    assert A.to_text() == "0/1,1/2;-3/1,0/1"
    with pytest.raises(ParseError):
        parse_matrix("0,1;1")
    with pytest.raises(ParseError) as exc:
        parse_matrix("0,1;a,0")
    assert exc.value.position == 4


def test_permuted_matches_brute_force():
    A = M([[0, 0, 5], [7, 0, 0], [0, -2, 0]])
    for sigma in permutations((1, 2, 3)):
        B = A.permuted(sigma)
        assert all(B[k, l] == A[sigma[k - 1], sigma[l - 1]] for k in range(1, 4) for l in range(1, 4))
