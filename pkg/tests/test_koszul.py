from __future__ import annotations

from math import comb

import numpy as np
import pytest

from hilbertgen.fp_linalg import MatrixOverField, PrimeField
from hilbertgen.generic import corpus, sample_presentation
from hilbertgen.koszul import (annihilator, embed, koszul_dual, koszul_numerical_test,
                               koszul_product)
from hilbertgen.presentation import Flavor, Presentation
from hilbertgen.series import AlgebraType

F = PrimeField()


def test_embed_trivial_cases():
    u = embed(Presentation(Flavor.COMMUTATIVE, ("x", "y")))
    assert u.dim == 1 and u.basis.row_vectors() == [[0, 1, F.p - 1, 0]]
    u = embed(corpus()["thm_ex_c"])
    assert u.dim == 3 and u.flavor is Flavor.LIE


def test_annihilator_of_square():
    from hilbertgen.fileformat import parse_presentation
    u = embed(parse_presentation("flavor nc\nvars x, y\nrel x*x\n"))
    a = annihilator(u)
    assert a.basis.row_vectors() == [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    empty = embed(Presentation(Flavor.NONCOMMUTATIVE, ("x", "y")))
    assert annihilator(empty).dim == 4


def test_exterior_dual():
    d = koszul_dual(Presentation(Flavor.COMMUTATIVE, ("x", "y")))
    assert d.flavor is Flavor.LIE
    assert {tuple(sorted(f.as_dict().items())) for f in d.relations} == {
        (((0, 0), 1),), (((1, 1), 1),), (((0, 1), 1), ((1, 0), 1))}


@pytest.mark.parametrize("name", ["thm_ex_a", "thm_ex_b", "thm_ex_c"])
def test_stated_duals(name):
    from hilbertgen.generic import CORPUS_DUALS
    c = corpus()
    d = koszul_dual(c[name])
    assert d.flavor is c[CORPUS_DUALS[name]].flavor
    assert embed(d).same_subspace(embed(c[CORPUS_DUALS[name]]))


def test_relation_counts():
    for flavor in ("nc", "commutative", "lie"):
        for r in range(0, 4):
            p = sample_presentation(flavor, AlgebraType.quadratic(3, r), seed=r)
            d = koszul_dual(p)
            total = 9 if flavor == "nc" else comb(4, 2)
            assert d.r == total - r


def _random_quadratic(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    flavor = ("nc", "commutative", "lie")[seed % 3]
    top = n * n if flavor == "nc" else comb(n + 1, 2)
    r = int(rng.integers(0, top + 1))
    return sample_presentation(flavor, AlgebraType.quadratic(n, r), seed=seed)


@pytest.mark.parametrize("seed", range(50))
def test_involution(seed):
    p = _random_quadratic(seed)
    u = embed(p)
    d = koszul_dual(p)
    ud = embed(d)
    assert u.dim + ud.dim == p.n ** 2
    pairing = (u.basis.to_dense().astype(object) @ ud.basis.to_dense().astype(object).T) % F.p
    assert not np.any(pairing)
    assert embed(koszul_dual(d)).same_subspace(u)


def test_numerical_test_examples():
    assert koszul_numerical_test(sample_presentation("nc", AlgebraType.quadratic(2, 1), seed=3), 8)
    assert not koszul_numerical_test(sample_presentation("nc", AlgebraType.quadratic(2, 2), seed=3), 6)
    assert not koszul_numerical_test(corpus()["thm_ex_b"], 6)
    assert koszul_product(corpus()["thm_ex_b"], 3).int_coeffs() == [1, 0, 0, 0]


def test_generic_dual_matches_generic_estimate():
    from hilbertgen.generic import generic_estimate
    from hilbertgen.hilbert import hilbert_series
    for n in (2, 3):
        for r in range(1, n * n // 4 + 1):
            p = sample_presentation("nc", AlgebraType.quadratic(n, r), seed=7)
            est = generic_estimate("nc", AlgebraType.quadratic(n, n * n - r), 6).estimate
            assert hilbert_series(koszul_dual(p), 6).series == est
