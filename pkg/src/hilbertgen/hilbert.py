"""Hilbert series of finitely presented graded algebras, degree by degree.

Noncommutative (and Lie-type, after expansion) algebras are handled through
the quotient A_d = (V (x) A_{d-1}) / span{ f . s }, where f runs over the
relations of degree k <= d and s over a basis of standard words of A_{d-k}.
This is the recurrence I_d = V I_{d-1} + I_{d-1} V + R_d read modulo V I_{d-1}:
every m f m' with m nonempty already lies in V I_{d-1}, and a relation
followed by a word reduces through the normal form of its tail. Each degree
keeps a reduction matrix sending V (x) A_{d-1} onto the standard basis of
A_d; normal forms of arbitrary words are products of these.

Commutative algebras use the plain recurrence I_d = V I_{d-1} + R_d over the
monomial basis.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
import scipy.sparse as sp

from .fp_linalg import (MatrixOverField, rank_csr, rref_csr, spmatmul_mod)
from .presentation import (Flavor, Form, Presentation, as_associative, enumerate_monomials,
                           monomial_index, slice_dimension, type_of_presentation, word_index)
from .series import AlgebraType, PowerSeries, anick_polynomial, log_op

_observers: list[Callable] = []


def add_observer(fn: Callable) -> None:
    """Register ``fn(presentation, result)``, called after every hilbert_series."""
    _observers.append(fn)


def remove_observer(fn: Callable) -> None:
    _observers.remove(fn)


@dataclass(frozen=True)
class DegreeSliceBasis:
    degree: int
    basis: MatrixOverField

    @property
    def dim(self) -> int:
        return self.basis.nrows


@dataclass(frozen=True)
class HilbertResult:
    series: PowerSeries
    slice_dims: tuple[int, ...]
    trunc: int

    @property
    def dims(self) -> list[int]:
        return self.series.int_coeffs()


class TypeReport(NamedTuple):
    type: AlgebraType
    minimal: bool
    dropped: tuple[int, ...]


class Span3Result(NamedTuple):
    independent: bool
    spanning: bool
    rank: int


def _empty(rows: int, cols: int) -> sp.csr_array:
    return sp.csr_array((rows, cols), dtype=np.int64)


def _coo(rows, cols, data, shape) -> sp.csr_array:
    return sp.csr_array((np.asarray(data, dtype=np.int64),
                         (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
                        shape=shape)


class WordEngine:
    """Quotients of the free associative algebra on n generators."""

    def __init__(self, n: int, relations: list[Form], p: int, trunc: int, keep_top: bool = False):
        self.n, self.p, self.trunc = n, p, trunc
        self.by_degree: dict[int, list[Form]] = defaultdict(list)
        for f in relations:
            if not f.is_zero:
                self.by_degree[f.degree].append(f)
        self.dims = [1]
        self.std = [np.zeros(1, dtype=np.int64)]
        self.red: list[sp.csr_array | None] = [None]
        for d in range(1, trunc + 1):
            self._step(d, need_red=keep_top or d < trunc)

    # T has rows (u, s) and holds NF(u s) in A_{level-1}; returns rows (x, u, s)
    def _prepend(self, t: sp.csr_array | None, level: int) -> sp.csr_array:
        red = self.red[level]
        if t is None:
            return red.copy()
        n = self.n
        a_prev, a_cur = self.dims[level - 1], self.dims[level]
        rc = red.tocoo()
        rcat = _coo(rc.row % a_prev, (rc.row // a_prev) * a_cur + rc.col, rc.data,
                    (a_prev, n * a_cur))
        prod = spmatmul_mod(t, rcat, self.p).tocoo()
        rho = t.shape[0]
        return _coo((prod.col // a_cur) * rho + prod.row, prod.col % a_cur, prod.data,
                    (n * rho, a_cur))

    def _residual(self, d: int) -> sp.csr_array:
        n, p = self.n, self.p
        a_prev = self.dims[d - 1]
        blocks = []
        for k in sorted(self.by_degree):
            if k > d:
                break
            a0 = self.dims[d - k]
            if a0 == 0:
                continue
            forms = self.by_degree[k]
            t = None
            for j in range(1, k):
                t = self._prepend(t, d - k + j)
            if t is None:
                t = sp.identity(a0, dtype=np.int64, format="csr")
            rows, cols, vals = [], [], []
            for fi, f in enumerate(forms):
                for w, c in f.terms:
                    rows.append(fi * n + w[0])
                    cols.append(word_index(w[1:], n))
                    vals.append(c)
            coef = _coo(rows, cols, vals, (len(forms) * n, n ** (k - 1)))
            kron = sp.csr_array(sp.kron(coef, sp.identity(a0, dtype=np.int64), format="csr"))
            m = spmatmul_mod(kron, t, p).tocoo()
            f_idx, rem = np.divmod(m.row, n * a0)
            i_idx, s_idx = np.divmod(rem, a0)
            blocks.append(_coo(f_idx * a0 + s_idx, i_idx * a_prev + m.col, m.data,
                               (len(forms) * a0, n * a_prev)))
        if not blocks:
            return _empty(0, n * a_prev)
        return sp.csr_array(sp.vstack(blocks, format="csr"))

    def _step(self, d: int, need_red: bool) -> None:
        n, p = self.n, self.p
        a_prev = self.dims[d - 1]
        big = n * a_prev
        if a_prev == 0:
            self.dims.append(0)
            self.std.append(np.zeros(0, dtype=np.int64))
            self.red.append(_empty(0, 0))
            return
        res = self._residual(d)
        if not need_red:
            self.dims.append(big - rank_csr(res, p))
            self.std.append(None)
            self.red.append(None)
            return
        piv, r = rref_csr(res, p)
        is_free = np.ones(big, dtype=bool)
        is_free[piv] = False
        free = np.flatnonzero(is_free)
        a_d = len(free)
        colmap = np.full(big, -1, dtype=np.int64)
        colmap[free] = np.arange(a_d)
        rc = r.tocoo()
        keep = colmap[rc.col] >= 0
        rows = np.concatenate([free, piv[rc.row[keep]]])
        cols = np.concatenate([np.arange(a_d), colmap[rc.col[keep]]])
        vals = np.concatenate([np.ones(a_d, dtype=np.int64), (p - rc.data[keep]) % p])
        self.red.append(_coo(rows, cols, vals, (big, a_d)))
        self.dims.append(a_d)
        prev_std = self.std[d - 1]
        self.std.append((free // a_prev) * n ** (d - 1) + prev_std[free % a_prev])

    def normal_form_table(self, d: int) -> sp.csr_array:
        """NF of every word of degree d (rows in word order), in A_d coordinates."""
        t = sp.identity(1, dtype=np.int64, format="csr")
        for level in range(1, d + 1):
            t = self._prepend(t, level)
        return t

    def normal_form(self, form: Form) -> np.ndarray:
        d = form.degree
        vec = np.zeros(self.dims[d], dtype=np.int64)
        for w, c in form.terms:
            v = sp.csr_array(np.array([[1]], dtype=np.int64))
            for pos in range(d - 1, -1, -1):
                level = d - pos
                a_prev = self.dims[level - 1]
                x = w[pos]
                block = self.red[level][x * a_prev:(x + 1) * a_prev]
                v = spmatmul_mod(v, block, self.p)
            dense = v.toarray().ravel()
            vec = (vec + dense * c % self.p) % self.p
        return vec

    def slice_basis(self, d: int) -> sp.csr_array:
        """RREF basis of I_d in word coordinates."""
        n, p = self.n, self.p
        total = n ** d
        std = self.std[d]
        nf = self.normal_form_table(d).tocoo()
        is_std = np.zeros(total, dtype=bool)
        is_std[std] = True
        nonstd = np.flatnonzero(~is_std)
        rowpos = np.full(total, -1, dtype=np.int64)
        rowpos[nonstd] = np.arange(len(nonstd))
        keep = rowpos[nf.row] >= 0
        rows = np.concatenate([np.arange(len(nonstd)), rowpos[nf.row[keep]]])
        cols = np.concatenate([nonstd, std[nf.col[keep]]])
        vals = np.concatenate([np.ones(len(nonstd), dtype=np.int64), (p - nf.data[keep]) % p])
        out = _coo(rows, cols, vals, (len(nonstd), total))
        out.sum_duplicates()
        out.sort_indices()
        return out


class CommutativeEngine:
    """Quotients of the polynomial ring on n generators."""

    def __init__(self, n: int, relations: list[Form], p: int, trunc: int, keep_top: bool = False):
        self.n, self.p, self.trunc = n, p, trunc
        self.by_degree: dict[int, list[Form]] = defaultdict(list)
        for f in relations:
            if not f.is_zero:
                self.by_degree[f.degree].append(f)
        self.bases: list[tuple[np.ndarray, sp.csr_array] | None] = [
            (np.zeros(0, dtype=np.int64), _empty(0, 1))]
        self.ideal_dims = [0]
        for d in range(1, trunc + 1):
            self._step(d, need_basis=keep_top or d < trunc)

    def _mult_tables(self, d: int) -> list[np.ndarray]:
        n = self.n
        src = enumerate_monomials(Flavor.COMMUTATIVE, n, d - 1)
        index = monomial_index(Flavor.COMMUTATIVE, n, d)
        tables = []
        for i in range(n):
            tab = np.empty(len(src), dtype=np.int64)
            for u, e in enumerate(src):
                e2 = list(e)
                e2[i] += 1
                tab[u] = index[tuple(e2)]
            tables.append(tab)
        return tables

    def _step(self, d: int, need_basis: bool) -> None:
        n, p = self.n, self.p
        cols = slice_dimension(Flavor.COMMUTATIVE, n, d)
        _, prev = self.bases[d - 1]
        blocks = []
        if prev.shape[0]:
            pc = prev.tocoo()
            for tab in self._mult_tables(d):
                blocks.append(_coo(pc.row, tab[pc.col], pc.data, (prev.shape[0], cols)))
        forms = self.by_degree.get(d, [])
        if forms:
            blocks.append(sp.csr_array(np.array([f.to_vector(n) for f in forms], dtype=np.int64)))
        mat = sp.csr_array(sp.vstack(blocks, format="csr")) if blocks else _empty(0, cols)
        if need_basis:
            piv, r = rref_csr(mat, p)
            self.bases.append((piv, r))
            self.ideal_dims.append(len(piv))
        else:
            self.bases.append(None)
            self.ideal_dims.append(rank_csr(mat, p))

    @property
    def dims(self) -> list[int]:
        return [slice_dimension(Flavor.COMMUTATIVE, self.n, d) - k
                for d, k in enumerate(self.ideal_dims)]

    def normal_form(self, form: Form) -> np.ndarray:
        """Reduce a form modulo I_d; returns coordinates on the free columns."""
        d = form.degree
        piv, r = self.bases[d]
        vec = np.array(form.to_vector(self.n), dtype=np.int64)
        if len(piv):
            coeff = sp.csr_array(vec[piv].reshape(1, -1))
            sub = spmatmul_mod(coeff, r, self.p).toarray().ravel()
            vec = (vec - sub) % self.p
        free = np.setdiff1d(np.arange(len(vec)), piv)
        return vec[free]


def _engine(p: Presentation, trunc: int, keep_top: bool = False, relations=None):
    p = as_associative(p)
    rels = list(p.relations if relations is None else relations)
    if p.flavor is Flavor.COMMUTATIVE:
        return CommutativeEngine(p.n, rels, p.field.p, trunc, keep_top)
    return WordEngine(p.n, rels, p.field.p, trunc, keep_top)


def ideal_slices(p: Presentation, trunc: int) -> list[DegreeSliceBasis]:
    """RREF basis of each I_d, d <= trunc, columns in monomial order."""
    if trunc < 0:
        raise ValueError("degree bound must be >= 0")
    eng = _engine(p, trunc, keep_top=True)
    q = as_associative(p)
    out = []
    for d in range(trunc + 1):
        if isinstance(eng, WordEngine):
            mat = eng.slice_basis(d)
        else:
            mat = eng.bases[d][1]
            if d == 0:
                mat = _empty(0, 1)
        out.append(DegreeSliceBasis(d, MatrixOverField.from_csr(q.field, mat)))
    return out


def hilbert_series(p: Presentation, trunc: int) -> HilbertResult:
    """Dimensions of A_0, ..., A_trunc."""
    if trunc < 0:
        raise ValueError("degree bound must be >= 0")
    eng = _engine(p, trunc)
    dims = eng.dims
    flavor = Flavor.COMMUTATIVE if p.flavor is Flavor.COMMUTATIVE else Flavor.NONCOMMUTATIVE
    full = [slice_dimension(flavor, p.n, d) for d in range(trunc + 1)]
    result = HilbertResult(PowerSeries(dims), tuple(f - a for f, a in zip(full, dims)), trunc)
    for fn in list(_observers):
        fn(p, result)
    return result


def lie_series(p: Presentation, trunc: int) -> PowerSeries:
    """Dimension series of the Lie superalgebra whose enveloping algebra is p."""
    if p.flavor is not Flavor.LIE:
        raise ValueError("lie_series needs a lie-flavored presentation")
    ul = hilbert_series(p, trunc).series
    out = log_op(ul)
    for c in out.coeffs:
        if c.denominator != 1 or c < 0:
            raise ValueError(f"Log of the enveloping series is not a dimension series: {out}")
    return out


def algebra_type(p: Presentation, trunc: int | None = None) -> TypeReport:
    """Drop every relation lying in the ideal of the relations before it
    (ascending degree, stable); report the type of the survivors."""
    top = p.max_degree
    if trunc is not None and trunc < top:
        raise ValueError("degree bound below the largest relation degree")
    order = sorted(range(p.r), key=lambda i: p.relations[i].degree)
    dropped: list[int] = []
    kept: list[int] = []
    for d in sorted({p.relations[i].degree for i in order}):
        lower = [p.relations[i] for i in kept]
        eng = _engine(p, d, keep_top=True, relations=lower)
        stack: list[np.ndarray] = []
        current = 0
        for i in order:
            f = p.relations[i]
            if f.degree != d:
                continue
            vec = eng.normal_form(as_associative_form(f))
            trial = stack + [vec]
            rk = rank_csr(sp.csr_array(np.array(trial, dtype=np.int64)), p.field.p) if vec.size else 0
            if rk > current:
                stack, current = trial, rk
                kept.append(i)
            else:
                dropped.append(i)
    t = AlgebraType(p.n, tuple(p.relations[i].degree for i in kept))
    return TypeReport(t, not dropped, tuple(sorted(dropped)))


def as_associative_form(f: Form) -> Form:
    return f.with_flavor(Flavor.NONCOMMUTATIVE) if f.flavor is Flavor.LIE else f


def strongly_free_test(p: Presentation, trunc: int) -> bool:
    """Does A(z) p_t(z) = 1 hold through degree ``trunc``? A bounded certificate only."""
    if p.flavor is Flavor.COMMUTATIVE:
        raise ValueError("strong freeness is a noncommutative notion")
    t = type_of_presentation(p)
    prod = hilbert_series(p, trunc).series * anick_polynomial(t, trunc)
    return prod == PowerSeries.one(trunc)


def degree3_span_test(p: Presentation) -> Span3Result:
    """Rank of {x_i f_j} (and {f_j x_i} for word flavors) in degree 3."""
    if any(f.degree != 2 for f in p.relations):
        raise ValueError("degree3_span_test needs quadratic relations only")
    q = as_associative(p)
    n, r, fp = q.n, q.r, q.field.p
    if q.flavor is Flavor.COMMUTATIVE:
        index = monomial_index(Flavor.COMMUTATIVE, n, 3)
        rows = []
        for i in range(n):
            for f in q.relations:
                row = np.zeros(len(index), dtype=np.int64)
                for m, c in f.terms:
                    e = list(m)
                    e[i] += 1
                    row[index[tuple(e)]] = (row[index[tuple(e)]] + c) % fp
                rows.append(row)
        expected, full = n * r, len(index)
    else:
        rows = []
        full = n ** 3
        for f in q.relations:
            for i in range(n):
                left = np.zeros(full, dtype=np.int64)
                right = np.zeros(full, dtype=np.int64)
                for w, c in f.terms:
                    left[word_index((i,) + w, n)] = c
                    right[word_index(w + (i,), n)] = c
                rows += [left, right]
        expected = 2 * n * r
    rk = rank_csr(sp.csr_array(np.array(rows, dtype=np.int64).reshape(len(rows), full)), fp) if rows else 0
    return Span3Result(rk == expected, rk == full, rk)
