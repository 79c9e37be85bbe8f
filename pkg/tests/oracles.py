"""Slow, independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

from hilbertgen.presentation import Flavor, monomial_index


def rref_rows(rows: list[list[int]], p: int) -> list[list[int]]:
    """Plain Gauss-Jordan over F_p on python lists."""
    rows = [[x % p for x in r] for r in rows]
    out: list[list[int]] = []
    ncols = len(rows[0]) if rows else 0
    col = 0
    for col in range(ncols):
        piv = next((r for r in rows if r[col]), None)
        if piv is None:
            continue
        rows.remove(piv)
        inv = pow(piv[col], -1, p)
        piv = [x * inv % p for x in piv]
        rows = [[(a - r[col] * b) % p for a, b in zip(r, piv)] for r in rows]
        out = [[(a - r[col] * b) % p for a, b in zip(r, piv)] for r in out]
        out.append(piv)
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return out


def rank_mod(rows: list[list[int]], p: int) -> int:
    return len(rref_rows(rows, p)) if rows else 0


def ideal_rows(pres, d: int) -> list[list[int]]:
    """Every monomial multiple m f m' (or m f) of a relation, in degree d."""
    n, p = pres.n, pres.field.p
    rows = []
    if pres.flavor is Flavor.COMMUTATIVE:
        index = monomial_index(Flavor.COMMUTATIVE, n, d)
        for f in pres.relations:
            k = d - f.degree
            if k < 0:
                continue
            for combo in itertools.combinations_with_replacement(range(n), k):
                row = [0] * len(index)
                for m, c in f.terms:
                    e = list(m)
                    for i in combo:
                        e[i] += 1
                    row[index[tuple(e)]] = (row[index[tuple(e)]] + c) % p
                rows.append(row)
        return rows
    for f in pres.relations:
        k = d - f.degree
        if k < 0:
            continue
        for left in range(k + 1):
            for a in itertools.product(range(n), repeat=left):
                for b in itertools.product(range(n), repeat=k - left):
                    row = [0] * n ** d
                    for w, c in f.terms:
                        idx = 0
                        for x in a + tuple(w) + b:
                            idx = idx * n + x
                        row[idx] = (row[idx] + c) % p
                    rows.append(row)
    return rows


def brute_series(pres, D: int) -> list[int]:
    out = []
    for d in range(D + 1):
        full = (len(monomial_index(Flavor.COMMUTATIVE, pres.n, d))
                if pres.flavor is Flavor.COMMUTATIVE else pres.n ** d)
        rows = ideal_rows(pres, d)
        out.append(full - (rank_mod(rows, pres.field.p) if rows else 0))
    return out


def series_coeffs(num: list[int], den: list[int], D: int) -> list[Fraction]:
    """Power series of num/den by long division, den[0] = 1."""
    out = []
    num = [Fraction(x) for x in num] + [Fraction(0)] * (D + 1)
    for k in range(D + 1):
        c = num[k] - sum(den[j] * out[k - j] for j in range(1, min(k, len(den) - 1) + 1))
        out.append(c / den[0])
    return out
