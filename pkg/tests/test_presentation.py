from __future__ import annotations

import pytest

from hilbertgen.fp_linalg import PrimeField
from hilbertgen.presentation import (Flavor, Form, Presentation, enumerate_monomials, expand_lie,
                                     is_lie_relation, lie_form, slice_dimension,
                                     type_of_presentation)

F = PrimeField()


def test_enumeration_order():
    assert enumerate_monomials("nc", 2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert enumerate_monomials("commutative", 2, 2) == [(2, 0), (1, 1), (0, 2)]
    for n in range(1, 4):
        for d in range(5):
            assert len(enumerate_monomials(Flavor.COMMUTATIVE, n, d)) == slice_dimension(Flavor.COMMUTATIVE, n, d)
            assert len(enumerate_monomials(Flavor.NONCOMMUTATIVE, n, d)) == n ** d


def test_form_normalizes_and_rejects_mixed_degrees():
    f = Form.from_terms(Flavor.NONCOMMUTATIVE, [((1, 0), 2), ((0, 1), 1), ((1, 0), -2)], F)
    assert f.terms == (((0, 1), 1),)
    with pytest.raises(ValueError):
        Form.from_terms(Flavor.NONCOMMUTATIVE, {(0, 0): 1, (1,): 1}, F)


def test_lie_form_is_symmetric():
    f = lie_form(3, {1: 1}, {(0, 2): 5}, F)
    assert is_lie_relation(f)
    assert f.as_dict() == {(1, 1): 1, (0, 2): 5, (2, 0): 5}


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(Flavor.NONCOMMUTATIVE, ("x", "x"))
    with pytest.raises(ValueError):
        Presentation(Flavor.NONCOMMUTATIVE, ("x",), (Form.from_terms(Flavor.NONCOMMUTATIVE, {(0,): 1}, F),))
    bad = Form.from_terms(Flavor.LIE, {(0, 1): 1}, F)
    with pytest.raises(ValueError, match="Lie"):
        Presentation(Flavor.LIE, ("x", "y"), (bad,))
    with pytest.raises(ValueError):
        Presentation(Flavor.NONCOMMUTATIVE, ("x",), (Form.from_terms(Flavor.NONCOMMUTATIVE, {(3, 3): 1}, F),))


def test_type_and_expand():
    p = Presentation(Flavor.LIE, ("x", "y"), (lie_form(2, {}, {(0, 1): 1}, F),))
    assert type_of_presentation(p).degrees == (2,)
    q = expand_lie(p)
    assert q.flavor is Flavor.NONCOMMUTATIVE
    assert q.relations[0].as_dict() == {(0, 1): 1, (1, 0): 1}
