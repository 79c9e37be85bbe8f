"""Numbered acceptance criteria; the terminal summary prints one line each."""

from __future__ import annotations

from math import comb

import numpy as np
import pytest

import conftest
from hilbertgen.conjectures import check_genkos
from hilbertgen.fp_linalg import MatrixOverField, PrimeField, nullspace, rank, rref
from hilbertgen.generic import (construct_anick, construct_lie_strongly_free,
                                construct_strongly_free, corpus, generic_estimate,
                                sample_presentation)
from hilbertgen.hilbert import degree3_span_test, hilbert_series, ideal_slices, lie_series, strongly_free_test
from hilbertgen.koszul import embed, koszul_dual
from hilbertgen.presentation import Flavor, Form
from hilbertgen.series import (AlgebraType, PowerSeries, bracket, exp_op, log_op, quadratic_inverse,
                               quadratic_inverse_positivity, vanishing_threshold)
from oracles import brute_series, ideal_rows, rank_mod, rref_rows

acceptance = pytest.mark.acceptance


@acceptance(1, "corpus series exactness, exAt (i)-(iv), D = 4")
def test_criterion_1():
    c = corpus()
    expected = {"exAt_i": [1, 2, 1, 0, 0], "exAt_ii": [1, 2, 1, 1, 0],
                "exAt_iii": [1, 3, 3, 0, 0], "exAt_iv": [1, 4, 5, 0, 0]}
    for name, want in expected.items():
        assert hilbert_series(c[name], 4).dims == want, name


@acceptance(2, "Koszul duals of the three stated examples, rref equality")
def test_criterion_2():
    c = corpus()
    for name, dual in [("thm_ex_a", "thm_ex_a_dual"), ("thm_ex_b", "thm_ex_b_dual"),
                       ("thm_ex_c", "thm_ex_c_dual")]:
        d = koszul_dual(c[name])
        assert d.flavor is c[dual].flavor
        assert embed(d).same_subspace(embed(c[dual])), name


@acceptance(3, "dual series 1,4,13,40,122 and Lie series 4z+6z^2+4z^3+7z^4")
def test_criterion_3():
    c = corpus()
    assert hilbert_series(c["thm_ex_b_dual"], 4).dims == [1, 4, 13, 40, 122]
    assert PowerSeries([1, -4, 3, 0, -1]).inverse().int_coeffs() == [1, 4, 13, 40, 122]
    assert lie_series(c["thm_ex_a_dual"], 4).int_coeffs() == [0, 4, 6, 4, 7]


@acceptance(4, "generic NC quadratic series equal [1/(1-nz+rz^2)], n <= 4, D = 6, unanimous")
def test_criterion_4():
    for n in range(1, 5):
        for r in range(1, n * n + 1):
            rep = generic_estimate(Flavor.NONCOMMUTATIVE, AlgebraType.quadratic(n, r), 6)
            assert rep.estimate == bracket(quadratic_inverse(n, r, 6)), (n, r)
            assert rep.all_unanimous, (n, r)


@acceptance(5, "strongly free construction and all one-relation deletions, n = 2..5, D = 8")
def test_criterion_5():
    for n in range(2, 6):
        p = construct_strongly_free(n)
        assert strongly_free_test(p, 8), n
        for i in range(p.r):
            assert strongly_free_test(p.drop(i), 8), (n, i)


@acceptance(6, "degree-3 independence and spanning thresholds")
def test_criterion_6():
    r = degree3_span_test(construct_anick(2))
    assert r.independent and r.spanning
    four = construct_anick(3)
    assert four.r == 4 and degree3_span_test(four).independent
    five = construct_anick(3, spanning=True)
    assert five.r == 5 and degree3_span_test(five).spanning
    for r in range(1, 17):
        for seed in range(3):
            res = degree3_span_test(sample_presentation("nc", AlgebraType.quadratic(4, r), seed=seed))
            assert res.independent == (r <= 8), (r, seed)
            assert res.spanning == (r >= 8), (r, seed)


@acceptance(7, "Lie thresholds at n = 3 and Lie strongly free series, n <= 4, D = 6")
def test_criterion_7():
    for r in range(1, comb(4, 2) + 1):
        for seed in range(3):
            L = lie_series(sample_presentation("lie", AlgebraType.quadratic(3, r), seed=seed), 3)
            assert (L[3] == 0) == (r >= 3), (r, seed)
    for n in range(2, 5):
        p = construct_lie_strongly_free(n)
        assert lie_series(p, 6) == log_op(quadratic_inverse(n, p.r, 6)), n


@acceptance(8, "Koszul regime sweep n = 2, 3, all r, D = 6, all seeds")
def test_criterion_8():
    for n in (2, 3):
        for r in range(1, n * n + 1):
            v = check_genkos(n, r, 6)
            assert v.agrees, (n, r, v.details)
            assert v.details["predicted_koszul"] == (4 * r <= n * n or 4 * r >= 3 * n * n)


def _random_small_presentation(rng, field):
    flavor = ("noncommutative", "commutative")[int(rng.integers(2))]
    n = int(rng.integers(1, 4))
    r = int(rng.integers(1, 4))
    degrees = tuple(sorted(int(d) for d in rng.integers(2, 4, size=r)))
    p = sample_presentation(flavor, AlgebraType(n, degrees), field, int(rng.integers(1 << 30)))
    if rng.random() < 0.5:
        rels = [Form.from_terms(p.flavor, [(m, c) for m, c in f.terms if rng.random() < 0.4] or [f.terms[0]],
                                field, f.degree) for f in p.relations]
        p = p.with_relations(rels)
    return p


@acceptance(9, "property suites (linear algebra, oracle slices, exp/log, involution, series bounds)")
def test_criterion_9_properties():
    rng = np.random.default_rng(2024)
    small = PrimeField(10007)
    # 200 random matrices
    for k in range(200):
        field = small if k % 2 else PrimeField()
        rows, cols = (int(x) for x in rng.integers(1, 9, size=2))
        dense = field.random_elements(rng, (rows, cols))
        if k % 3 == 0 and rows > 1:
            dense[-1] = (2 * dense[0]) % field.p
        m = MatrixOverField.from_dense(field, dense)
        assert rank(m) == rank_mod(dense.tolist(), field.p)
        assert rref(m).row_vectors() == rref_rows(dense.tolist(), field.p)
        ns = nullspace(m)
        assert rank(m) + ns.nrows == cols
        assert not np.any((dense.astype(object) @ ns.to_dense().astype(object).T) % field.p)
    # ideal slices against all monomial multiples
    cases = 0
    while cases < 60:
        p = _random_small_presentation(rng, small if cases % 2 else PrimeField())
        D = 5 if p.n <= 2 or p.flavor is Flavor.COMMUTATIVE else 4
        for sl in ideal_slices(p, D):
            rows = ideal_rows(p, sl.degree)
            assert sl.basis.row_vectors() == (rref_rows(rows, p.field.p) if rows else [])
        assert hilbert_series(p, D).dims == brute_series(p, D)
        cases += 1
    # exp / log round trip
    for _ in range(50):
        L = PowerSeries([0] + rng.integers(0, 6, size=8).tolist())
        assert log_op(exp_op(L)) == L
    # Koszul involution
    for k in range(50):
        n = int(rng.integers(1, 5))
        flavor = ("nc", "commutative", "lie")[k % 3]
        top = n * n if flavor == "nc" else comb(n + 1, 2)
        p = sample_presentation(flavor, AlgebraType.quadratic(n, int(rng.integers(0, top + 1))), seed=k)
        assert embed(koszul_dual(koszul_dual(p))).same_subspace(embed(p))
    # bounds checked by the conftest observer on every series computed so far
    assert conftest.BOUND_CHECKS["times_pt"] > 0 and conftest.BOUND_CHECKS["lex_froberg"] > 0
    assert not conftest.BOUND_FAILURES


@acceptance(9, "property suites (linear algebra, oracle slices, exp/log, involution, series bounds)")
@pytest.mark.xfail(strict=True, reason="B(z) >= 1/p_t(z) read coefficientwise without the bracket is "
                   "false once r > n^2/4: e.g. (n,r) = (2,3) gives B_6 = 0 < 13")
def test_criterion_9_unbracketed_inverse_bound():
    # runs the sweep itself so the verdict does not depend on test order
    for n in range(1, 4):
        for r in range(1, n * n + 1):
            generic_estimate(Flavor.NONCOMMUTATIVE, AlgebraType.quadratic(n, r), 6, samples=1)
    assert not conftest.UNBRACKETED_VIOLATIONS, conftest.UNBRACKETED_VIOLATIONS[0][:1]


@acceptance(10, "positivity of 1/(1-nz+rz^2) within D = 60 and vanishing thresholds, n <= 6")
def test_criterion_10():
    for n in range(1, 7):
        for r in range(0, n * n + 1):
            positive, first = quadratic_inverse_positivity(n, r, 60)
            assert positive == (4 * r <= n * n), (n, r)
            if 4 * r > n * n:
                assert first == vanishing_threshold(n, r), (n, r)
