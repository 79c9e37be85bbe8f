from __future__ import annotations

import pytest

from hilbertgen.generic import (CORPUS_DUALS, construct_anick, construct_lie_strongly_free,
                                construct_strongly_free, corpus, corpus_entry, generic_estimate,
                                sample_presentation)
from hilbertgen.hilbert import degree3_span_test, hilbert_series, lie_series
from hilbertgen.presentation import Flavor
from hilbertgen.series import AlgebraType, log_op, quadratic_inverse


def test_sampling_is_deterministic():
    t = AlgebraType.quadratic(3, 2)
    assert sample_presentation("nc", t, seed=4) == sample_presentation("nc", t, seed=4)
    assert sample_presentation("nc", t, seed=4) != sample_presentation("nc", t, seed=5)


def test_sample_shapes():
    p = sample_presentation("nc", AlgebraType.quadratic(2, 1), seed=0)
    assert len(p.relations[0].terms) == 4
    q = sample_presentation("lie", AlgebraType.quadratic(3, 3), seed=0)
    assert all(len(f.terms) <= 9 for f in q.relations)
    with pytest.raises(ValueError):
        sample_presentation("lie", AlgebraType.quadratic(2, 4))


@pytest.mark.parametrize("flavor,t,D,expected", [
    ("commutative", AlgebraType(3, (2, 2, 2)), 4, [1, 3, 3, 1, 0]),
    ("nc", AlgebraType.quadratic(2, 2), 4, [1, 2, 2, 0, 0]),
    ("commutative", AlgebraType(2, (2, 2, 3)), 4, [1, 2, 1, 0, 0]),
])
def test_generic_estimate_examples(flavor, t, D, expected):
    rep = generic_estimate(flavor, t, D)
    assert rep.estimate.int_coeffs() == expected
    assert rep.all_unanimous
    assert rep.to_json()["series"] == [str(x) for x in expected]


def test_sample_types_show_dropped_relation():
    rep = generic_estimate("commutative", AlgebraType(2, (2, 2, 3)), 4)
    assert all(t == AlgebraType(2, (2, 2)) for t in rep.sample_types)


def test_estimate_is_reproducible():
    a = generic_estimate("nc", AlgebraType.quadratic(3, 4), 5, base_seed=11).to_json()
    b = generic_estimate("nc", AlgebraType.quadratic(3, 4), 5, base_seed=11).to_json()
    assert a == b


@pytest.mark.parametrize("n,r", [(2, 1), (3, 2), (4, 4), (5, 6)])
def test_strongly_free_construction(n, r):
    p = construct_strongly_free(n)
    assert p.r == r
    assert hilbert_series(p, 7).series == quadratic_inverse(n, r, 7)


def test_lie_construction():
    for n, r in [(2, 1), (3, 2), (4, 4)]:
        p = construct_lie_strongly_free(n)
        assert p.flavor is Flavor.LIE and p.r == r
        assert lie_series(p, 6) == log_op(quadratic_inverse(n, r, 6))


def test_anick_construction_sizes():
    assert construct_anick(2).r == 2
    assert construct_anick(3).r == 4
    assert construct_anick(3, spanning=True).r == 5
    assert construct_anick(5).r == 12
    with pytest.raises(ValueError):
        construct_anick(1)


def test_anick_subsets():
    base = construct_anick(5)
    for i in range(base.r):
        assert degree3_span_test(base.drop(i)).independent
    span = construct_anick(3, spanning=True)
    assert degree3_span_test(span).spanning
    assert any(not degree3_span_test(span.drop(i)).independent for i in range(span.r))


def test_corpus_contents():
    c = corpus()
    assert len(c) == 14
    assert c["thm_ex_b"].r == 13
    assert c["exAt_iii"].r == 4
    assert set(CORPUS_DUALS.values()) <= set(c)
    with pytest.raises(KeyError):
        corpus_entry("nope")
