"""Koszul duality for quadratic algebras.

Relations are embedded as a subspace U of V (x) V (columns e_ij = x_i x_j in
word order), the dual relation space is the annihilator U^0 under the
coordinate pairing <e_ij, e*_kl> = delta_ik delta_jl, and U^0 is read back as
a presentation of the dual flavor (commutative <-> lie, nc <-> nc).

Commutative relations embed with weight 1/2 on each symmetrizer e_ij + e_ji
and the span of all commutators e_ij - e_ji is added. Reading back a
commutative result inverts that convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fp_linalg import MatrixOverField, nullspace, rref, rref_array
from .hilbert import hilbert_series
from .presentation import Flavor, Form, Presentation
from .series import PowerSeries


@dataclass(frozen=True)
class QuadraticSubspace:
    n: int
    flavor: Flavor
    basis: MatrixOverField

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def same_subspace(self, other: QuadraticSubspace) -> bool:
        return (self.n == other.n and self.flavor == other.flavor
                and self.basis.rows == other.basis.rows)


def _pair(m: tuple, flavor: Flavor) -> tuple[int, int]:
    if flavor is not Flavor.COMMUTATIVE:
        return m[0], m[1]
    idx = [i for i, e in enumerate(m) for _ in range(e)]
    return idx[0], idx[1]


def embed(p: Presentation) -> QuadraticSubspace:
    if any(f.degree != 2 for f in p.relations):
        raise ValueError("Koszul duality needs quadratic relations")
    n, fp = p.n, p.field.p
    rows = []
    if p.flavor is Flavor.COMMUTATIVE:
        half = p.field.inv(2)
        for i in range(n):
            for j in range(i + 1, n):
                v = np.zeros(n * n, dtype=np.int64)
                v[i * n + j] = 1
                v[j * n + i] = fp - 1
                rows.append(v)
        for f in p.relations:
            v = np.zeros(n * n, dtype=np.int64)
            for m, c in f.terms:
                i, j = _pair(m, p.flavor)
                if i == j:
                    v[i * n + i] = c
                else:
                    h = c * half % fp
                    v[i * n + j] = h
                    v[j * n + i] = h
            rows.append(v)
    else:
        for f in p.relations:
            v = np.zeros(n * n, dtype=np.int64)
            for m, c in f.terms:
                v[m[0] * n + m[1]] = c
            rows.append(v)
    mat = np.array(rows, dtype=np.int64).reshape(len(rows), n * n)
    basis = rref(MatrixOverField.from_dense(p.field, mat, ncols=n * n))
    return QuadraticSubspace(n, p.flavor, basis)


def annihilator(u: QuadraticSubspace) -> QuadraticSubspace:
    return QuadraticSubspace(u.n, u.flavor.dual(), nullspace(u.basis))


def read_back(u: QuadraticSubspace, names: tuple[str, ...], field) -> Presentation:
    n, fp = u.n, field.p
    dense = u.basis.to_dense()
    forms = []
    if u.flavor is Flavor.COMMUTATIVE:
        half = field.inv(2)
        sym = np.array([(row + row.reshape(n, n).T.ravel()) % fp * half % fp for row in dense],
                       dtype=np.int64).reshape(len(dense), n * n)
        sym, _ = rref_array(sym, fp)
        for row in sym:
            terms = {}
            for i in range(n):
                for j in range(i, n):
                    s = int(row[i * n + j])
                    if not s:
                        continue
                    e = [0] * n
                    e[i] += 1
                    e[j] += 1
                    terms[tuple(e)] = s if i == j else 2 * s
            form = Form.from_terms(Flavor.COMMUTATIVE, terms, field, 2)
            forms.append(form.scaled(field.inv(form.terms[0][1]), field))
    else:
        for row in dense:
            terms = {(k // n, k % n): int(c) for k, c in enumerate(row) if c}
            forms.append(Form.from_terms(u.flavor, terms, field, 2))
    return Presentation(u.flavor, names, tuple(forms), field)


def koszul_dual(p: Presentation) -> Presentation:
    return read_back(annihilator(embed(p)), p.names, p.field)


def koszul_product(p: Presentation, trunc: int) -> PowerSeries:
    """A(z) * A^!(-z) through degree ``trunc``."""
    a = hilbert_series(p, trunc).series
    b = hilbert_series(koszul_dual(p), trunc).series
    return a * b.substitute_neg()


def koszul_numerical_test(p: Presentation, trunc: int) -> bool:
    """Necessary condition for Koszulness, checked through degree ``trunc``.
    False certifies non-Koszul; True is only bounded evidence."""
    return koszul_product(p, trunc) == PowerSeries.one(trunc)
