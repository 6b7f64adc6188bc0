import random
from fractions import Fraction
from itertools import combinations

import pytest

from foliated.certificate import (
    MonomialGenericHowald,
    PairSnc,
    ReducedSncMonomial,
    Restriction,
    SmoothLinear,
    verify_certificate,
)
from foliated.foliation import (
    LOG_CANONICAL,
    NOT_LC,
    TERMINAL,
    FoliationError,
    VectorField,
    annihilator_fields,
    f_from_matrix,
    gamma_construct,
    linear_part,
    log_generators,
    mp_classify,
    omega_contract,
    parse_boundary,
    parse_vector_field,
    proportionality_constant,
    select_lambda,
    tangency_determinant,
    validate_pair,
)
from foliated.matrix import RationalMatrix, is_nilpotent
from foliated.newton import MonomialIdeal, lct_monomial, lct_upper_bound_from_support
from foliated.poly import parse_polynomial, weighted_lowest_part
from foliated.selfcheck import random_cycle_matrix

M = RationalMatrix.of
V = parse_vector_field


def P(text, n):
    return parse_polynomial(text, n)


def subsets(n):
    for k in range(n + 1):
        yield from combinations(range(1, n + 1), k)


# linear part and verdicts


def test_linear_part_examples():
    assert linear_part(V("y^2, -x^2")).is_zero()
    assert linear_part(V("x, 2*y")) == M([[1, 0], [0, 2]])
    assert linear_part(V("y, 0")) == M([[0, 1], [0, 0]])
    with pytest.raises(FoliationError):
        linear_part(V("1, x"))


def test_mp_classify_examples():
    assert mp_classify(V("1, 0")).tag == TERMINAL
    assert mp_classify(V("x, y")).tag == LOG_CANONICAL
    assert mp_classify(V("y^2, -x^2")).tag == NOT_LC
    with pytest.raises(FoliationError):
        mp_classify(V("0, 0"))


def test_mp_classify_transpose_robust():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(1, 3)
        A = M([[rng.choice([0, 0, 1, -1]) for _ in range(n)] for _ in range(n)])
        if A.is_zero():
            continue
        forms = lambda B: ", ".join(
            " + ".join(f"({B[i, j]})*x{j}" for j in range(1, n + 1)) for i in range(1, n + 1)
        )
        v, w = V(forms(A), n), V(forms(A.transpose()), n)
        if v.is_zero() or w.is_zero():
            continue
        assert mp_classify(v).tag == mp_classify(w).tag


def test_validate_pair_examples():
    assert not validate_pair(V("x, y"), P("x", 2))
    assert validate_pair(V("1, 0"), P("x", 2))
    assert validate_pair(V("x, y"), P("x + 1", 2))
    assert validate_pair(V("x, y"), None)


def test_log_generators():
    assert [g.components for g in log_generators(2, {1, 2})] == [V("x, 0").components, V("0, y").components]
    assert [g.to_text() for g in log_generators(2, set())] == ["1, 0", "0, 1"]
    assert [g.to_text() for g in log_generators(3, {1})] == ["x1, 0, 0", "0, 1, 0", "0, 0, 1"]


def test_parse_boundary():
    assert parse_boundary("1,3", 3) == {1, 3}
    assert parse_boundary("", 2) == frozenset()
    with pytest.raises(ValueError):
        parse_boundary("4", 3)


# determinants and contractions


def test_tangency_determinant_examples():
    assert tangency_determinant(V("1, 0"), [V("0, 1")]) == P("1", 2)
    det = tangency_determinant(V("y, x"), [V("x, -y")])
    assert det == P("-y^2 - x^2", 2)
    with pytest.raises(ValueError):
        tangency_determinant(V("1, 0"), [])


def test_tangency_of_two_dimensional_log_field():
    # rows (a, b) and (lambda x, mu y): determinant mu y a - lambda x b
    a, b = P("2*x + 3*y + x^2", 2), P("5*x - y + y^3", 2)
    lam, mu = 7, 11
    w = VectorField((a, b))
    det = tangency_determinant(w, [V(f"{lam}*x, {mu}*y")])
    assert det == (P("y", 2) * a).scale(mu) - (P("x", 2) * b).scale(lam)


def test_omega_contract_examples():
    lam = (Fraction(3), Fraction(5))
    assert omega_contract(V("x, 2*y"), lam, {1, 2}) == P("13*x*y", 2)
    assert omega_contract(V("1"), (Fraction(4),), set()) == P("4", 1)


def test_omega_contract_lowest_part_is_f():
    rng = random.Random(8)
    for _ in range(50):
        n = rng.randint(1, 4)
        A = M([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        comps = []
        for i in range(1, n + 1):
            lin = " + ".join(f"({A[i, j]})*x{j}" for j in range(1, n + 1))
            comps.append(f"{lin} + x1^2*x{n}")
        v = V(", ".join(comps), n)
        lam = tuple(Fraction(rng.randint(1, 9)) for _ in range(n))
        for R in subsets(n):
            g = omega_contract(v, lam, R)
            f = f_from_matrix(A, lam, R)
            if not f.is_zero():
                assert weighted_lowest_part(g) == weighted_lowest_part(f)


def test_f_from_matrix_examples():
    assert f_from_matrix(M([[5]]), (1,), {1}) == P("5*x", 1)
    unit = M([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert f_from_matrix(unit, (1, 1, 1), {1, 2, 3}) == P("x2^2*x3 + x1*x3^2 + x1^2*x2", 3)
    A = M([[1, 2], [3, 4]])
    assert f_from_matrix(A, (1, 1), set()) == P("4*x + 6*y", 2)


def test_annihilators_kill_the_log_form():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 4)
        lam = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        if not any(lam):
            lam[0] = Fraction(1)
        for R in subsets(n):
            for u in annihilator_fields(lam, R):
                assert omega_contract(u, lam, R).is_zero()


def test_determinant_equals_contraction_up_to_constant():
    rng = random.Random(6)
    for _ in range(40):
        n = rng.randint(2, 4)
        v = V(", ".join(f"{rng.randint(-3, 3)} + x{rng.randint(1, n)}^2 - {rng.randint(1, 3)}*x1" for _ in range(n)), n)
        lam = tuple(Fraction(rng.randint(1, 6)) for _ in range(n))
        for R in subsets(n):
            det = tangency_determinant(v, annihilator_fields(lam, R))
            c = proportionality_constant(det, omega_contract(v, lam, R))
            assert c in {lam[0] ** (n - 2), -(lam[0] ** (n - 2))}


def test_proportionality_constant():
    p = P("x + y", 2)
    assert proportionality_constant(p.scale(3), p) == 3
    assert proportionality_constant(p, P("x - y", 2)) is None
    assert proportionality_constant(p, p.scale(0)) is None


# lambda selection


def test_select_lambda_base_case():
    lam, cert = select_lambda(M([[5]]), {1})
    assert lam == (1,) and isinstance(cert, SmoothLinear)
    assert verify_certificate(f_from_matrix(M([[5]]), lam, {1}), cert)


def test_select_lambda_three_cycle_full_boundary():
    A = M([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    lam, cert = select_lambda(A, {1, 2, 3}, seed=0)
    assert isinstance(cert, MonomialGenericHowald) and cert.lct == 1
    assert all(1 <= l <= 10**6 for l in lam)
    assert verify_certificate(f_from_matrix(A, lam, {1, 2, 3}), cert)


def test_select_lambda_restriction():
    A = M([[1, 0], [0, 0]])
    lam, cert = select_lambda(A, {1, 2})
    assert lam == (1, 0)
    assert cert == Restriction((1,), (2,), SmoothLinear())
    assert verify_certificate(f_from_matrix(A, lam, {1, 2}), cert)


def test_select_lambda_partial_boundary_on_cycle():
    A = M([[0, 2, 0], [0, 0, 3], [5, 0, 0]])
    lam, cert = select_lambda(A, {1, 2})
    assert lam == (0, 1, 0) and isinstance(cert, ReducedSncMonomial)
    assert f_from_matrix(A, lam, {1, 2}) == P("3*x1*x3", 3)


def test_select_lambda_rejects_nilpotent():
    with pytest.raises(FoliationError):
        select_lambda(M([[0, 1], [0, 0]]), {1})


def test_select_lambda_is_deterministic():
    A = M([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert select_lambda(A, {1, 2, 3}, seed=9) == select_lambda(A, {1, 2, 3}, seed=9)


def test_cycle_forms_full_boundary_have_threshold_one():
    rng = random.Random(12)
    for _ in range(60):
        n = rng.randint(1, 4)
        A = random_cycle_matrix(rng, n)
        R = set(range(1, n + 1))
        lam, cert = select_lambda(A, R, rng)
        f = f_from_matrix(A, lam, R)
        if n > 1:
            assert lct_monomial(MonomialIdeal.from_support(f)).value == 1
        assert verify_certificate(f, cert)


def test_select_lambda_soundness_sample():
    rng = random.Random(21)
    done = 0
    while done < 60:
        n = rng.randint(1, 4)
        A = M([[rng.randint(-3, 3) if rng.random() < 0.5 else 0 for _ in range(n)] for _ in range(n)])
        if is_nilpotent(A):
            continue
        done += 1
        for R in subsets(n):
            lam, cert = select_lambda(A, R, rng)
            f = f_from_matrix(A, lam, R)
            assert verify_certificate(f, cert)
            assert lct_upper_bound_from_support(f).value >= 1


# gamma


def test_gamma_on_two_cycle_field():
    # a = 3y + x^2, b = 5x + y^3: the linear part is a 2-cycle, so both coefficients are random
    v = V("3*y + x^2, 5*x + y^3")
    res = gamma_construct(v, {1, 2}, seed=1)
    lam, mu = res.lam
    assert res.case == 1 and lam and mu
    assert weighted_lowest_part(res.gamma) == P(f"{mu * 5}*x^2 + {lam * 3}*y^2", 2)
    assert verify_certificate(res.gamma, res.certificate)
    # the same quadratic form, up to lam -> -lam, is the tangency curve of lam x d/dx + mu y d/dy
    det = tangency_determinant(v, [V(f"{mu}*x, {lam}*y")])
    assert weighted_lowest_part(det) == P(f"-{mu * 5}*x^2 + {lam * 3}*y^2", 2)


def test_gamma_on_diagonal_field():
    res = gamma_construct(V("x, 2*y"), {1, 2})
    lam = res.lam
    assert res.gamma == P(f"{lam[0] + 2 * lam[1]}*x*y", 2)
    assert verify_certificate(res.gamma, res.certificate)


def test_gamma_nonsingular_case():
    res = gamma_construct(V("1, 0"), {2})
    assert res.case == 2 and res.transverse_index == 1
    assert isinstance(res.certificate, PairSnc)
    low = weighted_lowest_part(res.gamma)
    assert low.is_monomial() and low.support == {(0, 1)}
    assert verify_certificate(res.gamma, res.certificate)


def test_gamma_with_transverse_divisor():
    # s = 1 would be wrong here: delta = y is tangent to d/dx + d/dy only through x_2
    res = gamma_construct(V("1, 1"), {1}, P("y", 2))
    assert res.transverse_index == 2
    assert verify_certificate(res.gamma, res.certificate)


def test_gamma_rejects_bad_input():
    with pytest.raises(FoliationError):
        gamma_construct(V("y^2, -x^2"), {1, 2})
    with pytest.raises(FoliationError):
        gamma_construct(V("x, y"), {1}, P("x", 2))
    with pytest.raises(FoliationError):
        gamma_construct(V("1, x"), {2}, P("y + x^2", 2))


def test_gamma_lowest_part_degree_bookkeeping():
    # the lowest part has degree |R| unless every boundary coefficient vanishes
    rng = random.Random(30)
    for _ in range(40):
        n = rng.randint(1, 3)
        A = M([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if is_nilpotent(A):
            continue
        comps = ", ".join(" + ".join(f"({A[i, j]})*x{j}" for j in range(1, n + 1)) + f" + x{i}^3" for i in range(1, n + 1))
        v = V(comps, n)
        for R in subsets(n):
            res = gamma_construct(v, R, seed=rng.randrange(1000))
            low = weighted_lowest_part(res.gamma)
            deg = sum(next(iter(low.support)))
            touches_R = any(res.lam[i - 1] for i in R)
            assert deg == (len(R) if touches_R else len(R) + 1)
            assert lct_upper_bound_from_support(res.gamma).value >= 1
