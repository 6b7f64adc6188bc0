"""Seeded property suites that double as the acceptance checks.

Each suite returns a :class:`SuiteReport`.  Where a suite compares the
library against an oracle, the oracle is written here independently of the
code path it checks (matrix powers by repeated multiplication, simple-cycle
enumeration by DFS, exhaustive permutation search, brute-force weight
minimisation with numpy).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, combinations, permutations, product
from typing import Callable

import numpy as np

from .certificate import verify_certificate
from .foliation import (
    NOT_LC,
    VectorField,
    annihilator_fields,
    f_from_matrix,
    gamma_construct,
    mp_classify,
    omega_contract,
    proportionality_constant,
    select_lambda,
    tangency_determinant,
)
from .matrix import (
    HypothesisViolated,
    RationalMatrix,
    classify_special,
    is_nilpotent,
    shortest_cycle_length,
)
from .newton import MonomialIdeal, lct_monomial, lct_upper_bound_from_support, parse_ideal
from .poly import Polynomial, parse_polynomial, weighted_lowest_part
from .wps import (
    annihilator_2d,
    dehomogenize,
    cubic_toric_form,
    foliation_canonical_degree,
    form_weight,
    self_intersection,
)

__all__ = ["SuiteReport", "SUITES", "run_suite", "run_all"]


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def record(self, ok: bool, what: str = "") -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 20:
                self.failures.append(what)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "ok": self.ok,
            "failures": self.failures,
            "notes": self.notes,
        }


def _subsets(n: int):
    return chain.from_iterable(combinations(range(1, n + 1), k) for k in range(n + 1))


# ---------------------------------------------------------------------------
# oracles

def oracle_nilpotent(A: RationalMatrix) -> bool:
    n = A.order
    rows = [list(r) for r in A.entries]
    P = [list(r) for r in rows]
    for _ in range(n - 1):
        P = [[sum(P[i][k] * rows[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return all(x == 0 for r in P for x in r)


def oracle_cycle_lengths(A: RationalMatrix) -> set[int]:
    """Lengths of all simple directed cycles, by DFS from each smallest vertex."""
    n = A.order
    adj = {i: [j for j in range(n) if A.entries[i][j] != 0] for i in range(n)}
    lengths = set()

    def dfs(start, u, visited, depth):
        for v in adj[u]:
            if v == start:
                lengths.add(depth)
            elif v > start and v not in visited:
                visited.add(v)
                dfs(start, v, visited, depth + 1)
                visited.discard(v)

    for s in range(n):
        dfs(s, s, {s}, 1)
    return lengths


def oracle_cycle_form(A: RationalMatrix) -> tuple[int, ...] | None:
    """A permutation putting ``A`` in single-cycle form, by trying all of them."""
    n = A.order
    for sigma in permutations(range(n)):
        ok = True
        for k in range(n):
            for l in range(n):
                a = A.entries[sigma[k]][sigma[l]]
                on_cycle = l == (k + 1) % n
                if (a != 0) != on_cycle:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(s + 1 for s in sigma)
    return None


def oracle_hypothesis(A: RationalMatrix) -> bool:
    n = A.order
    for k in range(1, n):
        for I in combinations(range(n), k):
            sub = RationalMatrix(tuple(tuple(A.entries[i][j] for j in I) for i in I))
            if not oracle_nilpotent(sub):
                return False
    return True


def oracle_min_weight_ratio(gens, n: int, bound: int = 50, low: int = 0) -> Fraction:
    """min over w in {low..bound}^n, w != 0, of sum(w)/min_i <w, v_i> (skipping zero minima)."""
    grid = np.array(list(product(range(low, bound + 1), repeat=n)), dtype=np.int64)
    grid = grid[grid.any(axis=1)]
    V = np.array(gens, dtype=np.int64)
    dots = grid @ V.T
    mins = dots.min(axis=1)
    sums = grid.sum(axis=1)
    keep = mins > 0
    sums, mins = sums[keep], mins[keep]
    ratios = sums / mins
    best = ratios.min()
    # exact tie-break among candidates close to the float minimum
    cand = np.nonzero(ratios <= best * (1 + 1e-9))[0]
    return min(Fraction(int(sums[i]), int(mins[i])) for i in cand)


# ---------------------------------------------------------------------------
# random generators

def _rand_rational(rng: random.Random, lo=-5, hi=5, maxden=4) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(lo, hi)
    return Fraction(num, rng.randint(1, maxden))


def random_cycle_matrix(rng: random.Random, n: int) -> RationalMatrix:
    order = list(range(n))
    rng.shuffle(order)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        rows[order[k]][order[(k + 1) % n]] = _rand_rational(rng)
    return RationalMatrix.of(rows)


def random_hypothesis_matrix(rng: random.Random, n: int) -> RationalMatrix:
    """Random rational matrix with all proper principal submatrices nilpotent."""
    while True:
        if rng.random() < 0.5:
            rows = [
                [_rand_rational(rng) if i != j and rng.random() < 0.3 else Fraction(0) for j in range(n)]
                for i in range(n)
            ]
            A = RationalMatrix.of(rows)
        else:
            A = random_cycle_matrix(rng, n)
            if rng.random() < 0.5:
                rows = [list(r) for r in A.entries]
                rows[rng.randrange(n)][rng.randrange(n)] = _rand_rational(rng)
                A = RationalMatrix.of(rows)
        if oracle_hypothesis(A):
            return A


def random_small_matrix(rng: random.Random, n: int, lo=-3, hi=3) -> RationalMatrix:
    kind = rng.random()
    if kind < 0.5:
        rows = [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
    elif kind < 0.75:
        rows = [[Fraction(rng.randint(lo, hi)) if rng.random() < 0.3 else Fraction(0) for _ in range(n)] for _ in range(n)]
    else:
        order = list(range(n))
        rng.shuffle(order)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for k in range(n):
            v = 0
            while v == 0:
                v = rng.randint(lo, hi)
            rows[order[k]][order[(k + 1) % n]] = Fraction(v)
    return RationalMatrix.of(rows)


def random_polynomial(rng: random.Random, n: int, max_degree: int, nterms: int, min_degree: int = 0) -> Polynomial:
    terms = {}
    for _ in range(nterms):
        d = rng.randint(min_degree, max_degree)
        alpha = [0] * n
        for _ in range(d):
            alpha[rng.randrange(n)] += 1
        terms[tuple(alpha)] = _rand_rational(rng)
    return Polynomial(n, terms)


def random_field_with_linear_part(rng: random.Random, A: RationalMatrix, max_degree: int = 3) -> VectorField:
    n = A.order
    comps = []
    for i in range(n):
        linear = Polynomial(n, {tuple(int(k == j) for k in range(n)): A.entries[i][j] for j in range(n)})
        comps.append(linear + random_polynomial(rng, n, max_degree, rng.randint(0, 3), min_degree=2))
    return VectorField(tuple(comps))


# ---------------------------------------------------------------------------
# suites

def suite_three_cycle_lct(seed: int = 0) -> SuiteReport:
    rep = SuiteReport("three_cycle_lct")
    res = lct_monomial(parse_ideal("x2^2*x3, x1*x3^2, x1^2*x2", 3))
    rep.record(res.value == 1, f"lct was {res.value}")
    rep.record(res.verify(), "witness did not verify")
    rep.record(res.coefficients == (Fraction(1, 3),) * 3, f"membership coefficients {res.coefficients}")
    # the same for the n-variable family from the cycle argument
    for n in range(2, 7):
        gens = []
        for i in range(n):
            alpha = [1] * n
            alpha[i] = 2
            alpha[(i - 1) % n] = 0
            gens.append(tuple(alpha))
        r = lct_monomial(MonomialIdeal(n, tuple(gens)))
        rep.record(r.value == 1 and r.verify(), f"n={n}: lct {r.value}")
    return rep


def suite_toric_plane(seed: int = 0) -> SuiteReport:
    rep = SuiteReport("toric_plane")
    expected_field = (parse_polynomial("y^2", 2), parse_polynomial("-x^2", 2))
    for n in range(1, 11):
        omega, w = cubic_toric_form(n)
        rep.record(form_weight(omega, w) == 3 + n, f"n={n}: weight")
        rep.record(foliation_canonical_degree(omega, w) == 1, f"n={n}: canonical degree")
        rep.record(self_intersection(1, 1, w) == Fraction(1, n), f"n={n}: self-intersection")
        chart = dehomogenize(omega, 2, w)
        v = annihilator_2d(*chart.components)
        rep.record(v.components == expected_field, f"n={n}: chart field {v}")
        verdict = mp_classify(v)
        rep.record(verdict.tag == NOT_LC and verdict.linear_part.is_zero(), f"n={n}: verdict {verdict.tag}")
    return rep


def _cycle_case(rep: SuiteReport, A: RationalMatrix) -> None:
    n = A.order
    i_ = not oracle_nilpotent(A)
    lengths = oracle_cycle_lengths(A)
    ii = n in lengths and min(lengths) == n
    sigma = oracle_cycle_form(A)
    iii = sigma is not None
    lib_nil = is_nilpotent(A)
    lib_cls = classify_special(A)
    lib_short = shortest_cycle_length(A)
    ok = (
        i_ == ii == iii
        and lib_nil == (not i_)
        and lib_cls.is_cycle_form == iii
        and lib_short == (min(lengths) if lengths else None)
    )
    if ok and iii:
        ok = lib_cls.reassemble(n) == A and A.permuted(lib_cls.permutation) == A.permuted(lib_cls.permutation)
        B = A.permuted(lib_cls.permutation)
        ok = ok and all((B.entries[k][l] != 0) == (l == (k + 1) % n) for k in range(n) for l in range(n))
    rep.record(ok, f"{A.to_text()}: (i)={i_} (ii)={ii} (iii)={iii}")


def suite_cycle_structure(seed: int = 0, random_cases: int = 1000) -> SuiteReport:
    rep = SuiteReport("cycle_structure")
    exhaustive = 0
    for bits in range(512):
        A = RationalMatrix.of([[(bits >> (3 * i + j)) & 1 for j in range(3)] for i in range(3)])
        if oracle_hypothesis(A):
            exhaustive += 1
            _cycle_case(rep, A)
        else:
            try:
                classify_special(A)
                rep.record(False, f"{A.to_text()}: hypothesis violation not reported")
            except HypothesisViolated:
                rep.record(True)
    rng = random.Random(seed)
    non_nilpotent = 0
    for _ in range(random_cases):
        A = random_hypothesis_matrix(rng, 4)
        non_nilpotent += not is_nilpotent(A)
        _cycle_case(rep, A)
    rep.notes = {"exhaustive_n3_in_hypothesis": exhaustive, "random_n4": random_cases, "random_non_nilpotent": non_nilpotent}
    return rep


def suite_lambda_selection(seed: int = 0, cases: int = 200) -> SuiteReport:
    rep = SuiteReport("lambda_selection")
    rng = random.Random(seed)
    counts = {}
    done = 0
    while done < cases:
        n = rng.randint(1, 4)
        A = random_small_matrix(rng, n)
        if is_nilpotent(A):
            continue
        done += 1
        for R in _subsets(n):
            lam, cert = select_lambda(A, R, rng.randrange(2**32))
            f = f_from_matrix(A, lam, R)
            kind = type(cert).__name__
            counts[kind] = counts.get(kind, 0) + 1
            ok = any(lam) and verify_certificate(f, cert)
            bound = lct_upper_bound_from_support(f) if ok else None
            ok = ok and bound.value >= 1
            rep.record(ok, f"A={A.to_text()} R={R} lam={lam} cert={cert}")
    rep.notes = {"certificate_roots": counts}
    return rep


def random_ideal(rng: random.Random) -> MonomialIdeal:
    n = rng.randint(1, 3)
    gens = []
    for _ in range(rng.randint(1, 4)):
        g = (0,) * n
        while not any(g):
            g = tuple(rng.randint(0, 4) for _ in range(n))
        gens.append(g)
    return MonomialIdeal(n, tuple(gens))


def suite_howald(seed: int = 0, cases: int = 300) -> SuiteReport:
    rep = SuiteReport("howald")
    rng = random.Random(seed)
    interior_gap = 0
    for _ in range(cases):
        ideal = random_ideal(rng)
        res = lct_monomial(ideal)
        brute = oracle_min_weight_ratio(ideal.generators, ideal.dimension)
        rep.record(res.value == brute and res.verify(), f"{ideal.to_text()}: lp {res.value} brute {brute}")
        positive = oracle_min_weight_ratio(ideal.generators, ideal.dimension, low=1)
        if positive != res.value:
            # strictly positive weights only approach an optimum on a coordinate face
            interior_gap += 1
            rep.record(positive > res.value and 0 in res.weight, f"{ideal.to_text()}: positive grid {positive}")
    rep.notes = {"optimum_needs_zero_weight": interior_gap}
    return rep


def suite_planar_tangency(seed: int = 0, cases: int = 20) -> SuiteReport:
    rep = SuiteReport("planar_tangency")
    rng = random.Random(seed)
    x, y = Polynomial.variable(1, 2), Polynomial.variable(2, 2)
    for k in range(cases):
        singular = k % 2 == 0
        a = random_polynomial(rng, 2, 2, 6, min_degree=1 if singular else 0)
        b = random_polynomial(rng, 2, 2, 6, min_degree=1 if singular else 0)
        lam, mu = _rand_rational(rng), _rand_rational(rng)
        w = VectorField((a, b))
        # mu x b - lambda y a is the determinant against mu x d/dx + lambda y d/dy;
        # against lambda x d/dx + mu y d/dy the roles of the two scalars swap
        target = (x * b).scale(mu) - (y * a).scale(lam)
        det = tangency_determinant(w, [VectorField((x.scale(mu), y.scale(lam)))])
        rep.record(det == target or det == -target, f"a={a} b={b}")
        swapped = (x * b).scale(lam) - (y * a).scale(mu)
        det = tangency_determinant(w, [VectorField((x.scale(lam), y.scale(mu)))])
        rep.record(det == swapped or det == -swapped, f"a={a} b={b} (swapped labels)")
        if singular and not target.is_zero():
            ax, ay = a.coefficient((1, 0)), a.coefficient((0, 1))
            bx, by = b.coefficient((1, 0)), b.coefficient((0, 1))
            quad = (x * x).scale(mu * bx) - (y * y).scale(lam * ay) + (x * y).scale(mu * by - lam * ax)
            rep.record(target.homogeneous_part(2) == quad, f"quadratic part for a={a} b={b}")
    return rep


def suite_determinant_contraction(seed: int = 0, cases: int = 100) -> SuiteReport:
    rep = SuiteReport("determinant_contraction")
    rng = random.Random(seed)
    for _ in range(cases):
        n = rng.randint(1, 4)
        v = VectorField(tuple(random_polynomial(rng, n, 3, rng.randint(1, 4)) for _ in range(n)))
        for R in _subsets(n):
            lam = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
            if not any(lam):
                lam[rng.randrange(n)] = Fraction(1)
            det = tangency_determinant(v, annihilator_fields(lam, R))
            contraction = omega_contract(v, lam, R)
            c = proportionality_constant(det, contraction)
            p = next(l for l in lam if l)
            expected = {p ** (n - 2), -(p ** (n - 2))}
            ok = c is not None and c != 0 and (contraction.is_zero() or c in expected)
            rep.record(ok, f"v=({v}) R={R} lam={lam} constant={c}")
    return rep


def suite_gamma(seed: int = 0, cases: int = 100) -> SuiteReport:
    rep = SuiteReport("gamma")
    rng = random.Random(seed)
    max_redraws = 0
    singular = 0
    while singular < cases:
        n = rng.randint(1, 3)
        A = random_small_matrix(rng, n)
        if is_nilpotent(A):
            continue
        singular += 1
        v = random_field_with_linear_part(rng, A)
        for R in _subsets(n):
            res = gamma_construct(v, R, seed=rng.randrange(2**32))
            f = f_from_matrix(A, res.lam, R)
            low = weighted_lowest_part(res.gamma)
            ok = res.case == 1 and low == f and res.redraws <= 16
            ok = ok and verify_certificate(res.gamma, res.certificate)
            ok = ok and lct_upper_bound_from_support(res.gamma).value >= 1
            max_redraws = max(max_redraws, res.redraws)
            rep.record(ok, f"v=({v}) R={R}")
    nonsingular = 0
    with_delta = 0
    while nonsingular < cases:
        n = rng.randint(1, 3)
        comps = [random_polynomial(rng, n, 3, rng.randint(1, 4)) for _ in range(n)]
        s = rng.randrange(n)
        comps[s] = comps[s] + Polynomial.constant(_rand_rational(rng), n)
        v = VectorField(tuple(comps))
        delta = None
        if nonsingular % 2:
            delta = random_polynomial(rng, n, 2, 4, min_degree=1)
            if delta.is_zero() or v.apply(delta).constant_term() == 0:
                continue
            with_delta += 1
        nonsingular += 1
        for R in _subsets(n):
            res = gamma_construct(v, R, delta, seed=rng.randrange(2**32))
            ok = res.case == 2 and type(res.certificate).__name__ == "PairSnc"
            ok = ok and verify_certificate(res.gamma, res.certificate)
            low = weighted_lowest_part(res.gamma)
            ok = ok and sum(next(iter(low.support))) == len(set(R) - {res.transverse_index})
            rep.record(ok, f"v=({v}) R={R} delta={delta}")
    rep.notes = {"max_redraws": max_redraws, "nonsingular_with_delta": with_delta}
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "three_cycle_lct": suite_three_cycle_lct,
    "toric_plane": suite_toric_plane,
    "cycle_structure": suite_cycle_structure,
    "lambda_selection": suite_lambda_selection,
    "howald": suite_howald,
    "planar_tangency": suite_planar_tangency,
    "determinant_contraction": suite_determinant_contraction,
    "gamma": suite_gamma,
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or 'all'")
    start = time.perf_counter()
    rep = SUITES[name](seed)
    rep.seconds = time.perf_counter() - start
    return rep


def run_all(seed: int = 0) -> list[SuiteReport]:
    return [run_suite(name, seed) for name in SUITES]
