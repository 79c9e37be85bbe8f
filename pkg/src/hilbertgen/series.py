"""Truncated power series with exact rational coefficients.

Besides ring arithmetic this module carries the operators used to state the
conjectured generic series: the positive-prefix truncation ``bracket``, the
commutative generic series (``froberg_series``), the polynomial
1 - n z + sum z^d_i (``anick_polynomial``), and the Exp/Log pair relating a
graded Lie superalgebra on odd generators to its enveloping algebra.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import mpmath


@dataclass(frozen=True)
class AlgebraType:
    """(n; d_1 <= ... <= d_r): n degree-one generators, relation degrees."""

    n: int
    degrees: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(int(d) for d in self.degrees)))
        if self.n < 1:
            raise ValueError("need at least one generator")
        if any(d < 2 for d in self.degrees):
            raise ValueError("relation degrees must be >= 2")

    @classmethod
    def quadratic(cls, n: int, r: int) -> AlgebraType:
        return cls(n, (2,) * r)

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def is_quadratic(self) -> bool:
        return all(d == 2 for d in self.degrees)

    def __str__(self):
        return f"({self.n};{','.join(map(str, self.degrees))})"

    def to_json(self) -> dict:
        return {"n": self.n, "degrees": list(self.degrees)}


class PowerSeries:
    """a_0 + a_1 z + ... + a_D z^D, coefficients stored as Fractions."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, trunc: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if trunc is not None:
            if trunc < 0:
                raise ValueError("truncation degree must be >= 0")
            cs = (cs + [Fraction(0)] * (trunc + 1))[: trunc + 1]
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls, trunc: int) -> PowerSeries:
        return cls([0], trunc)

    @classmethod
    def one(cls, trunc: int) -> PowerSeries:
        return cls([1], trunc)

    @classmethod
    def polynomial(cls, coeffs: dict[int, int] | Sequence, trunc: int) -> PowerSeries:
        if isinstance(coeffs, dict):
            cs = [0] * (trunc + 1)
            for k, v in coeffs.items():
                if k <= trunc:
                    cs[k] += v
            return cls(cs)
        return cls(coeffs, trunc)

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PowerSeries({self.as_strings()})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if k and c == 1:
                coef = ""
            elif k and c == -1:
                coef = "-"
            else:
                coef = str(c)
            terms.append(f"{coef}{mon}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(z^{self.trunc + 1})"

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integral coefficients")
        return [int(c) for c in self.coeffs]

    def truncate(self, trunc: int) -> PowerSeries:
        return PowerSeries(self.coeffs[: trunc + 1], trunc)

    def as_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def to_json(self) -> str:
        return json.dumps(self.as_strings())

    @classmethod
    def from_json(cls, text: str | list) -> PowerSeries:
        data = json.loads(text) if isinstance(text, str) else text
        return cls([Fraction(s) for s in data])

    # arithmetic; mixed truncations drop to the shorter series
    def __add__(self, other):
        other = _as_series(other, self.trunc)
        d = min(self.trunc, other.trunc)
        return PowerSeries([self[k] + other[k] for k in range(d + 1)])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_series(other, self.trunc))

    def __rsub__(self, other):
        return _as_series(other, self.trunc) - self

    def __mul__(self, other):
        other = _as_series(other, self.trunc)
        d = min(self.trunc, other.trunc)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (d + 1)
        for i in range(d + 1):
            if a[i] == 0:
                continue
            ai = a[i]
            for j in range(d + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return PowerSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> PowerSeries:
        a = self.coeffs
        if a[0] == 0:
            raise ValueError("non-invertible series")
        out = [Fraction(0)] * len(a)
        out[0] = 1 / a[0]
        for k in range(1, len(a)):
            s = sum((a[j] * out[k - j] for j in range(1, k + 1) if a[j]), Fraction(0))
            out[k] = -s / a[0]
        return PowerSeries(out)

    def __truediv__(self, other):
        return self * _as_series(other, self.trunc).inverse()

    def substitute_neg(self) -> PowerSeries:
        """S(-z)."""
        return PowerSeries([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])


def _as_series(x, trunc: int) -> PowerSeries:
    if isinstance(x, PowerSeries):
        return x
    return PowerSeries([x], trunc)


def add(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    return s + t


def mul(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    return s * t


def inverse(s: PowerSeries) -> PowerSeries:
    return s.inverse()


def bracket(s: PowerSeries, start: int = 0) -> PowerSeries:
    """Keep a_i while a_start, ..., a_i are all > 0; zero from the first
    nonpositive coefficient on. Coefficients below ``start`` pass through
    untouched (``start=1`` is used for Lie series, whose a_0 is 0)."""
    out = list(s.coeffs[:start])
    alive = True
    for c in s.coeffs[start:]:
        if alive and c > 0:
            out.append(c)
        else:
            alive = False
            out.append(Fraction(0))
    return PowerSeries(out)


def lex_compare(s: PowerSeries, t: PowerSeries) -> int:
    """-1, 0, 1 for less / equal / greater in lexicographic coefficient order."""
    if s.trunc != t.trunc:
        raise ValueError("lex_compare needs equal truncations")
    for a, b in zip(s.coeffs, t.coeffs):
        if a != b:
            return 1 if a > b else -1
    return 0


def coeffwise_ge(s: PowerSeries, t: PowerSeries) -> bool:
    if s.trunc != t.trunc:
        raise ValueError("coeffwise_ge needs equal truncations")
    return all(a >= b for a, b in zip(s.coeffs, t.coeffs))


def froberg_series(t: AlgebraType, trunc: int) -> PowerSeries:
    """[prod (1 - z^d_i) / (1 - z)^n] to degree ``trunc``."""
    return bracket(froberg_product(t, trunc))


def froberg_product(t: AlgebraType, trunc: int) -> PowerSeries:
    # 1/(1-z)^n has coefficients C(n+k-1, k)
    num = [Fraction(0)] * (trunc + 1)
    num[0] = Fraction(1)
    for d in t.degrees:
        for k in range(trunc, d - 1, -1):
            num[k] -= num[k - d]
    den = PowerSeries([comb(t.n + k - 1, k) for k in range(trunc + 1)])
    return PowerSeries(num) * den


def anick_polynomial(t: AlgebraType, trunc: int | None = None) -> PowerSeries:
    """p_t(z) = 1 - n z + sum_i z^d_i."""
    top = max((1,) + t.degrees)
    trunc = top if trunc is None else trunc
    cs = {0: 1, 1: -t.n}
    for d in t.degrees:
        cs[d] = cs.get(d, 0) + 1
    return PowerSeries.polynomial(cs, trunc)


def quadratic_inverse(n: int, r: int, trunc: int) -> PowerSeries:
    """1 / (1 - n z + r z^2)."""
    return PowerSeries([1, -n, r], trunc).inverse()


def mobius(m: int) -> int:
    if m < 1:
        raise ValueError("mobius needs m >= 1")
    result, k = 1, 2
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            result = -result
        k += 1
    return -result if m > 1 else result


def _check_dimension_series(L: PowerSeries) -> list[int]:
    if L[0] != 0:
        raise ValueError("not a dimension series: nonzero constant term")
    out = []
    for c in L.coeffs:
        if c.denominator != 1 or c < 0:
            raise ValueError("not a dimension series")
        out.append(int(c))
    return out


def exp_op(L: PowerSeries) -> PowerSeries:
    """prod_i (1 + z^(2i-1))^e_(2i-1) / (1 - z^(2i))^e_(2i) to degree D."""
    e = _check_dimension_series(L)
    D = L.trunc
    acc = [0] * (D + 1)
    acc[0] = 1
    for m in range(1, D + 1):
        if not e[m]:
            continue
        if m % 2:
            factor = [comb(e[m], j) for j in range(D // m + 1)]
        else:
            factor = [comb(e[m] + j - 1, j) for j in range(D // m + 1)]
        nxt = [0] * (D + 1)
        for i, a in enumerate(acc):
            if not a:
                continue
            for j, f in enumerate(factor):
                k = i + j * m
                if k > D:
                    break
                nxt[k] += a * f
        acc = nxt
    return PowerSeries(acc)


def series_log(V: PowerSeries) -> PowerSeries:
    """Natural log of a series with constant term 1: integral of V'/V."""
    if V[0] != 1:
        raise ValueError("log needs constant term 1")
    D = V.trunc
    deriv = PowerSeries([k * V[k] for k in range(1, D + 1)] or [0], max(D - 1, 0))
    q = deriv * V.truncate(max(D - 1, 0)).inverse()
    return PowerSeries([0] + [q[k - 1] / k for k in range(1, D + 1)], D)


def log_op(V: PowerSeries) -> PowerSeries:
    """sum_r mu(r)/r * log V((-1)^(r+1) z^r), the inverse of ``exp_op``."""
    if V[0] != 1:
        raise ValueError("Log needs a series with constant term 1")
    D = V.trunc
    lg = series_log(V)
    out = [Fraction(0)] * (D + 1)
    for r in range(1, D + 1):
        mu = mobius(r)
        if mu == 0:
            continue
        sign = 1 if r % 2 else -1
        for k in range(1, D // r + 1):
            c = lg[k]
            if c:
                out[r * k] += Fraction(mu, r) * c * (sign ** k)
    return PowerSeries(out)


def quadratic_inverse_positivity(n: int, r: int, trunc: int) -> tuple[bool, int | None]:
    """Are a_1..a_D of 1/(1 - n z + r z^2) all positive? Also the first
    degree where that fails (None if it never does within D)."""
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    a_prev, a = 1, n
    if trunc >= 1 and a <= 0:
        return False, 1
    for k in range(2, trunc + 1):
        a_prev, a = a, n * a - r * a_prev
        if a <= 0:
            return False, k
    return True, None


# tan^2(pi/m) is rational only for these m
_RATIONAL_TAN2 = {3: Fraction(3), 4: Fraction(1), 6: Fraction(1, 3)}


def _tan2_le(m: int, x: Fraction) -> bool:
    """Decide tan^2(pi/m) <= x exactly (m >= 3)."""
    if m in _RATIONAL_TAN2:
        return _RATIONAL_TAN2[m] <= x
    iv = mpmath.iv
    saved = iv.prec
    prec = 53
    try:
        while prec <= 1 << 16:
            iv.prec = prec
            t2 = iv.tan(iv.pi / m) ** 2
            xi = iv.mpf(x.numerator) / x.denominator
            if t2.b <= xi.a:
                return True
            if t2.a > xi.b:
                return False
            prec *= 2
    finally:
        iv.prec = saved
    raise RuntimeError("interval comparison did not resolve")


def vanishing_threshold(n: int, r: int) -> int:
    """Smallest k >= 2 with r >= (tan^2(pi/(k+1)) + 1) n^2 / 4.

    This is the degree at which [1/(1 - n z + r z^2)] first vanishes when
    r > n^2/4; the comparison is decided exactly.
    """
    x = Fraction(4 * r, n * n) - 1
    if x <= 0:
        raise ValueError("series never vanishes (r <= n^2/4)")
    k = 2
    while not _tan2_le(k + 1, x):
        k += 1
    return k
