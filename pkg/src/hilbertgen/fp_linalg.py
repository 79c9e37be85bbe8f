"""Exact linear algebra over a prime field F_p.

Everything downstream (ideal slices, Koszul annihilators, degree-3 tests)
reduces to rank / reduced row echelon form / nullspace computations here.

Matrices are held sparsely. Elimination starts on sparse rows and switches
to a dense numba kernel once fill-in passes 25% of the working area.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

import numba
import numpy as np
import scipy.sparse as sp

DEFAULT_PRIME = 2147483647
# entries < 2**31 so that a product of two residues fits in a signed int64
MAX_PRIME = 2**31
FILL_LIMIT = 0.25


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin bases for p < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for an odd prime p < 2**31."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"modulus {p!r} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported (odd prime required)")
        if p >= MAX_PRIME:
            raise ValueError(f"prime {p} too large: need p < 2**31")

    def __call__(self, value) -> FieldElement:
        return FieldElement(self.reduce(value), self)

    def reduce(self, value) -> int:
        """Map an int or a Fraction-like ``a/b`` to its residue."""
        if isinstance(value, int):
            return value % self.p
        num, den = value.numerator, value.denominator
        if den % self.p == 0:
            raise ValueError(f"denominator {den} is divisible by p={self.p}")
        return num * pow(den, -1, self.p) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, -1, self.p)

    def signed(self, a: int) -> int:
        """Symmetric representative in (-p/2, p/2]; used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def random_elements(self, rng: np.random.Generator, size) -> np.ndarray:
        return rng.integers(0, self.p, size=size, dtype=np.int64)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError("FieldElement value must be a canonical residue")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return self.field.reduce(other)

    def __add__(self, other):
        return FieldElement((self.value + self._coerce(other)) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement((self.value - self._coerce(other)) % self.field.p, self.field)

    def __rsub__(self, other):
        return FieldElement((self._coerce(other) - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other) % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.field.p, self.field)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        return self * FieldElement(self._coerce(other), self.field).inverse()

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


@dataclass(frozen=True)
class MatrixOverField:
    """Sparse row-major matrix: each row is a tuple of ``(col, value)`` pairs,
    columns strictly increasing, values nonzero residues."""

    field: PrimeField
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        p = self.field.p
        for row in self.rows:
            last = -1
            for c, v in row:
                if not (last < c < self.ncols) or not 0 < v < p:
                    raise ValueError("malformed sparse row")
                last = c

    @classmethod
    def from_dense(cls, field: PrimeField, data, ncols: int | None = None) -> MatrixOverField:
        arr = np.asarray(data, dtype=object)
        if arr.size == 0:
            nrows = arr.shape[0] if arr.ndim == 2 else 0
            ncols = ncols if ncols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
            return cls(field, nrows, ncols, tuple(() for _ in range(nrows)))
        rows = []
        for r in arr:
            vals = [field.reduce(int(v)) for v in r]
            rows.append(tuple((j, v) for j, v in enumerate(vals) if v))
        return cls(field, arr.shape[0], arr.shape[1], tuple(rows))

    @classmethod
    def from_csr(cls, field: PrimeField, a: sp.csr_array) -> MatrixOverField:
        a = sp.csr_array(a)
        a.sort_indices()
        rows = []
        for i in range(a.shape[0]):
            lo, hi = a.indptr[i], a.indptr[i + 1]
            rows.append(tuple((int(c), int(v)) for c, v in zip(a.indices[lo:hi], a.data[lo:hi]) if v))
        return cls(field, a.shape[0], a.shape[1], tuple(rows))

    def to_csr(self) -> sp.csr_array:
        indptr = [0]
        indices, data = [], []
        for row in self.rows:
            for c, v in row:
                indices.append(c)
                data.append(v)
            indptr.append(len(indices))
        return sp.csr_array((np.array(data, dtype=np.int64), np.array(indices, dtype=np.int64),
                             np.array(indptr, dtype=np.int64)), shape=(self.nrows, self.ncols))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        for i, row in enumerate(self.rows):
            for c, v in row:
                out[i, c] = v
        return out

    def row_vectors(self) -> list[list[int]]:
        return self.to_dense().tolist()

    def apply(self, v: Sequence[int]) -> list[int]:
        """M @ v over F_p."""
        p = self.field.p
        return [sum(x * int(v[c]) for c, x in row) % p for row in self.rows]


# ---------------------------------------------------------------------------
# dense kernels


@numba.njit(cache=True)
def _modinv(a, p):
    result = 1
    base = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


@numba.njit(cache=True)
def _dense_echelon(a, p, reduced):
    """In-place Gauss(-Jordan) elimination. Pivot = first nonzero column, then
    first available row. Returns (rank, pivot columns)."""
    m, n = a.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    nz = np.empty(n, dtype=np.int64)
    row = 0
    for col in range(n):
        if row == m:
            break
        piv = -1
        for i in range(row, m):
            if a[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(col, n):
                t = a[row, j]
                a[row, j] = a[piv, j]
                a[piv, j] = t
        inv = _modinv(a[row, col], p)
        k = 0
        for j in range(col, n):
            if a[row, j] != 0:
                a[row, j] = a[row, j] * inv % p
                nz[k] = j
                k += 1
        start = 0 if reduced else row + 1
        for i in range(start, m):
            if i == row:
                continue
            f = a[i, col]
            if f == 0:
                continue
            g = p - f
            for t in range(k):
                j = nz[t]
                a[i, j] = (a[i, j] + g * a[row, j]) % p
        pivots[row] = col
        row += 1
    return row, pivots[:row].copy()


@numba.njit(cache=True)
def _dense_matmul(a, b, p):
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.int64)
    for i in range(m):
        for t in range(k):
            x = a[i, t]
            if x == 0:
                continue
            for j in range(n):
                y = b[t, j]
                if y != 0:
                    out[i, j] = (out[i, j] + x * y) % p
    return out


def rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """RREF of a dense int64 array (entries in [0, p)). Returns (R, pivots)
    with zero rows dropped. The input is not modified."""
    work = np.array(a, dtype=np.int64, copy=True)
    if work.ndim != 2 or work.size == 0:
        ncols = work.shape[1] if work.ndim == 2 else 0
        return np.zeros((0, ncols), dtype=np.int64), np.zeros(0, dtype=np.int64)
    rank, piv = _dense_echelon(work, p, True)
    return work[:rank], piv


def rank_array(a: np.ndarray, p: int) -> int:
    work = np.array(a, dtype=np.int64, copy=True)
    if work.ndim != 2 or work.size == 0:
        return 0
    rank, _ = _dense_echelon(work, p, False)
    return int(rank)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return _dense_matmul(np.ascontiguousarray(a, dtype=np.int64),
                         np.ascontiguousarray(b, dtype=np.int64), p)


# ---------------------------------------------------------------------------
# sparse front end


class _Densify(Exception):
    pass


def _sparse_echelon(rows: Iterable[dict], ncols: int, p: int, stop_at_full: bool = True):
    """Incremental echelon form on dict rows; raises _Densify on heavy fill."""
    piv: dict[int, dict] = {}
    nnz = 0
    for v in rows:
        if not v:
            continue
        v = dict(v)
        heap = list(v)
        heapq.heapify(heap)
        lead = -1
        while heap:
            c = heapq.heappop(heap)
            x = v.get(c)
            if not x:
                continue
            prow = piv.get(c)
            if prow is None:
                lead = c
                break
            g = p - x
            for j, y in prow.items():
                if j in v:
                    s = (v[j] + g * y) % p
                    if s:
                        v[j] = s
                    else:
                        del v[j]
                else:
                    v[j] = g * y % p
                    heapq.heappush(heap, j)
        if lead < 0:
            continue
        v = {j: x for j, x in v.items() if j >= lead and x}
        inv = pow(v[lead], -1, p)
        if inv != 1:
            v = {j: x * inv % p for j, x in v.items()}
        piv[lead] = v
        nnz += len(v)
        if len(piv) >= 32 and nnz > FILL_LIMIT * len(piv) * ncols:
            raise _Densify
        if stop_at_full and len(piv) == ncols:
            break
    # back substitution, largest pivot first
    order = sorted(piv)
    pivset = set(order)
    for c in reversed(order):
        row = piv[c]
        hits = [j for j in row if j != c and j in pivset]
        if not hits:
            continue
        for j in hits:
            x = row.get(j)
            if not x:
                continue
            g = p - x
            for jj, y in piv[j].items():
                s = (row.get(jj, 0) + g * y) % p
                if s:
                    row[jj] = s
                else:
                    row.pop(jj, None)
    return order, piv


def _csr_rows(a: sp.csr_array) -> list[dict]:
    out = []
    indptr, indices, data = a.indptr, a.indices, a.data
    for i in range(a.shape[0]):
        lo, hi = indptr[i], indptr[i + 1]
        out.append({int(c): int(x) for c, x in zip(indices[lo:hi], data[lo:hi]) if x})
    return out


def rref_csr(a, p: int) -> tuple[np.ndarray, sp.csr_array]:
    """RREF of a sparse matrix (entries already reduced mod p).

    Returns (pivots, R) where R is CSR with one row per pivot, in pivot order.
    """
    a = sp.csr_array(a)
    m, n = a.shape
    if m == 0 or n == 0 or a.nnz == 0:
        return np.zeros(0, dtype=np.int64), sp.csr_array((0, n), dtype=np.int64)
    if a.nnz <= FILL_LIMIT * m * n:
        try:
            order, piv = _sparse_echelon(_csr_rows(a), n, p)
        except _Densify:
            pass
        else:
            indptr = [0]
            indices: list[int] = []
            data: list[int] = []
            for c in order:
                row = piv[c]
                for j in sorted(row):
                    indices.append(j)
                    data.append(row[j])
                indptr.append(len(indices))
            r = sp.csr_array((np.array(data, dtype=np.int64), np.array(indices, dtype=np.int64),
                              np.array(indptr, dtype=np.int64)), shape=(len(order), n))
            return np.array(order, dtype=np.int64), r
    dense, pivots = rref_array(a.toarray(), p)
    return pivots, sp.csr_array(dense)


def rank_csr(a, p: int) -> int:
    a = sp.csr_array(a)
    m, n = a.shape
    if m == 0 or n == 0 or a.nnz == 0:
        return 0
    if a.nnz <= FILL_LIMIT * m * n:
        try:
            order, _ = _sparse_echelon(_csr_rows(a), n, p)
            return len(order)
        except _Densify:
            pass
    return rank_array(a.toarray(), p)


# ---------------------------------------------------------------------------
# sparse modular products


def scale_mod(a: sp.csr_array, c: int, p: int) -> sp.csr_array:
    out = sp.csr_array(a, copy=True)
    out.data = out.data * (c % p) % p
    out.eliminate_zeros()
    return out


def add_mod(a: sp.csr_array, b: sp.csr_array, p: int) -> sp.csr_array:
    out = sp.csr_array(a + b)
    out.data %= p
    out.eliminate_zeros()
    return out


def spmatmul_mod(a: sp.csr_array, b: sp.csr_array, p: int) -> sp.csr_array:
    """a @ b over F_p without int64 overflow.

    b is split into 16-bit halves; each partial product sums at most
    2**15 terms below 2**31 * 2**16, so it stays under 2**63.
    """
    a = sp.csr_array(a)
    b = sp.csr_array(b)
    k = a.shape[1]
    lo = sp.csr_array(b, copy=True)
    lo.data = lo.data & 0xFFFF
    hi = sp.csr_array(b, copy=True)
    hi.data = hi.data >> 16
    total = sp.csr_array((a.shape[0], b.shape[1]), dtype=np.int64)
    step = 1 << 15
    for s in range(0, max(k, 1), step):
        blk = a[:, s:s + step]
        part_lo = sp.csr_array(blk @ lo[s:s + step])
        part_lo.data %= p
        part_hi = sp.csr_array(blk @ hi[s:s + step])
        part_hi.data = part_hi.data % p * 65536 % p
        total = add_mod(total, add_mod(part_lo, part_hi, p), p)
    return total


# ---------------------------------------------------------------------------
# public operations on MatrixOverField


def rank(m: MatrixOverField) -> int:
    return rank_csr(m.to_csr(), m.field.p)


def rref(m: MatrixOverField) -> MatrixOverField:
    """Canonical reduced row echelon basis of the row space (zero rows dropped)."""
    _, r = rref_csr(m.to_csr(), m.field.p)
    return MatrixOverField.from_csr(m.field, r)


def pivot_columns(m: MatrixOverField) -> list[int]:
    piv, _ = rref_csr(m.to_csr(), m.field.p)
    return [int(c) for c in piv]


def nullspace(m: MatrixOverField) -> MatrixOverField:
    """RREF basis of {v : M v = 0}; it has ``cols - rank`` rows."""
    p = m.field.p
    n = m.ncols
    piv, r = rref_csr(m.to_csr(), p)
    pivset = set(int(c) for c in piv)
    free = [j for j in range(n) if j not in pivset]
    if not free:
        return MatrixOverField(m.field, 0, n, ())
    rd = r.toarray() if r.shape[0] else np.zeros((0, n), dtype=np.int64)
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(piv):
            x = rd[i, f]
            if x:
                basis[k, c] = (p - x) % p
    out, _ = rref_array(basis, p)
    return MatrixOverField.from_csr(m.field, sp.csr_array(out))


def row_space_equal(a: MatrixOverField, b: MatrixOverField) -> bool:
    if a.ncols != b.ncols:
        return False
    return rref(a).rows == rref(b).rows
