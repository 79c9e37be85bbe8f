"""Random specialization as a stand-in for generic coefficients.

A presentation whose coefficients are drawn uniformly from a large prime
field behaves like the one with indeterminate coefficients except on a
proper closed set, so with high probability its Hilbert series is the
minimal one. Each sample only bounds the generic series from above,
degreewise; several seeds are combined by taking the coefficientwise minimum.

Also here: the explicit bipartite and degree-3 constructions, and the named
corpus of presentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .fp_linalg import PrimeField
from .hilbert import algebra_type, hilbert_series
from .presentation import Flavor, Form, Presentation, enumerate_monomials, lie_form
from .series import AlgebraType, PowerSeries

DEFAULT_SAMPLES = 3


def generator_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def sample_presentation(flavor: Flavor | str, t: AlgebraType, field_: PrimeField | None = None,
                        seed: int = 0) -> Presentation:
    """Relations of type t with independent uniform coefficients on every monomial."""
    flavor = Flavor.parse(flavor) if isinstance(flavor, str) else flavor
    field_ = field_ or PrimeField()
    n = t.n
    rng = np.random.default_rng([seed, n, field_.p, *t.degrees])
    forms = []
    if flavor is Flavor.LIE:
        if not t.is_quadratic:
            raise ValueError("lie-type relations are quadratic")
        if t.r > comb(n + 1, 2):
            raise ValueError(f"lie type needs r <= C(n+1,2) = {comb(n + 1, 2)}")
        pairs = [(j, l) for j in range(n) for l in range(j + 1, n)]
        for _ in range(t.r):
            cs = field_.random_elements(rng, n + len(pairs)).tolist()
            forms.append(lie_form(n, dict(enumerate(cs[:n])), dict(zip(pairs, cs[n:])), field_))
    else:
        for d in t.degrees:
            monos = enumerate_monomials(flavor, n, d)
            cs = field_.random_elements(rng, len(monos)).tolist()
            forms.append(Form.from_terms(flavor, zip(monos, cs), field_, d))
    return Presentation(flavor, generator_names(n), tuple(forms), field_)


@dataclass(frozen=True)
class GenericReport:
    type: AlgebraType
    flavor: Flavor
    prime: int
    seeds: tuple[int, ...]
    per_sample: tuple[PowerSeries, ...]
    estimate: PowerSeries
    unanimous: tuple[bool, ...]
    sample_types: tuple[AlgebraType, ...] = field(default=())

    @property
    def all_unanimous(self) -> bool:
        return all(self.unanimous)

    def to_json(self) -> dict:
        return {
            "type": self.type.to_json(),
            "flavor": self.flavor.value,
            "prime": self.prime,
            "seeds": list(self.seeds),
            "series": self.estimate.as_strings(),
            "unanimous": list(self.unanimous),
            "per_sample": [s.as_strings() for s in self.per_sample],
            "sample_types": [t.to_json() for t in self.sample_types],
        }


def coefficientwise_min(series: list[PowerSeries]) -> tuple[PowerSeries, tuple[bool, ...]]:
    cols = list(zip(*(s.coeffs for s in series)))
    return PowerSeries([min(c) for c in cols]), tuple(len(set(c)) == 1 for c in cols)


def generic_estimate(flavor: Flavor | str, t: AlgebraType, trunc: int,
                     samples: int = DEFAULT_SAMPLES, base_seed: int = 0,
                     field_: PrimeField | None = None) -> GenericReport:
    """Coefficientwise minimum of the Hilbert series of ``samples`` random
    presentations of type t; an upper bound for the generic series."""
    if samples < 1:
        raise ValueError("need at least one sample")
    flavor = Flavor.parse(flavor) if isinstance(flavor, str) else flavor
    field_ = field_ or PrimeField()
    seeds = tuple(base_seed + i for i in range(samples))
    series, types = [], []
    for s in seeds:
        pres = sample_presentation(flavor, t, field_, s)
        series.append(hilbert_series(pres, trunc).series)
        types.append(algebra_type(pres).type)
    est, unanimous = coefficientwise_min(series)
    return GenericReport(t, flavor, field_.p, seeds, tuple(series), est, unanimous, tuple(types))


# ---------------------------------------------------------------------------
# explicit constructions


def _bipartite(n: int) -> tuple[list[str], list[int], list[int]]:
    if n < 2:
        raise ValueError("construction needs n >= 2")
    s = n // 2
    xs = [f"x{i + 1}" for i in range(s)]
    ys = [f"y{j + 1}" for j in range(n - s)]
    return xs + ys, list(range(s)), list(range(s, n))


def construct_strongly_free(n: int, field_: PrimeField | None = None) -> Presentation:
    """k<x_1..x_s, y_1..y_(n-s)>/(y_i x_j), s = floor(n/2): floor(n^2/4) relations
    and series 1/((1 - s z)(1 - (n-s) z))."""
    field_ = field_ or PrimeField()
    names, xs, ys = _bipartite(n)
    rels = [Form.from_terms(Flavor.NONCOMMUTATIVE, {(y, x): 1}, field_, 2) for y in ys for x in xs]
    return Presentation(Flavor.NONCOMMUTATIVE, tuple(names), tuple(rels), field_)


def construct_lie_strongly_free(n: int, field_: PrimeField | None = None) -> Presentation:
    """Same bipartite pattern with relations [x_i, y_j]."""
    field_ = field_ or PrimeField()
    names, xs, ys = _bipartite(n)
    rels = [lie_form(n, {}, {(x, y): 1}, field_) for x in xs for y in ys]
    return Presentation(Flavor.LIE, tuple(names), tuple(rels), field_)


def construct_anick(n: int, spanning: bool = False, field_: PrimeField | None = None) -> Presentation:
    """Quadratic forms whose degree-3 multiples are independent (or, with
    ``spanning`` and n odd, fill all of degree 3).

    n = 2s: x_i y_j and x_i x_j - y_i y_j. n = 2s+1 adds y_0 with
    y_0 x_i + x_i y_0 + y_i y_0 and y_0 y_i + y_i y_0, and y_0^2 if spanning.
    """
    if n < 2:
        raise ValueError("construction needs n >= 2")
    field_ = field_ or PrimeField()
    s = n // 2
    odd = n % 2 == 1
    if odd:
        names = [f"x{i + 1}" for i in range(s)] + ["y0"] + [f"y{i + 1}" for i in range(s)]
        x = list(range(s))
        y0 = s
        y = list(range(s + 1, n))
    else:
        names = [f"x{i + 1}" for i in range(s)] + [f"y{i + 1}" for i in range(s)]
        x = list(range(s))
        y = list(range(s, n))

    def nc(terms):
        return Form.from_terms(Flavor.NONCOMMUTATIVE, terms, field_, 2)

    rels = []
    for i in range(s):
        for j in range(s):
            rels.append(nc({(x[i], y[j]): 1}))
    for i in range(s):
        for j in range(s):
            rels.append(nc({(x[i], x[j]): 1, (y[i], y[j]): -1}))
    if odd:
        for i in range(s):
            rels.append(nc({(y0, x[i]): 1, (x[i], y0): 1, (y[i], y0): 1}))
        for i in range(s):
            rels.append(nc({(y0, y[i]): 1, (y[i], y0): 1}))
        if spanning:
            rels.append(nc({(y0, y0): 1}))
    return Presentation(Flavor.NONCOMMUTATIVE, tuple(names), tuple(rels), field_)


# ---------------------------------------------------------------------------
# corpus

_CORPUS_TEXT = {
    "exAt_i": """
        flavor commutative
        vars x, y
        rel x*x
        rel x*y
        rel y*y*y
    """,
    "exAt_ii": """
        flavor commutative
        vars x, y
        rel x*x
        rel x*y
        rel y*y*y*y
    """,
    "exAt_iii": """
        flavor commutative
        vars x, y, z
        rel x*x
        rel y*z
        rel x*y + z*z
        rel y*y*y
    """,
    "exAt_iii_sub": """
        flavor commutative
        vars x, y, z
        rel x*x
        rel y*z
        rel x*y + z*z
    """,
    "exAt_iv": """
        flavor commutative
        vars x1, x2, x3, x4
        rel x1*x1
        rel x1*x2
        rel x1*x3
        rel x1*x4
        rel x2*x2
        rel x2*x3*x3
        rel x2*x3*x4
        rel x2*x4*x4
        rel x3*x3*x3
        rel x3*x3*x4
        rel x3*x4*x4
        rel x4*x4*x4
    """,
    "thm_ex_a": """
        flavor commutative
        vars a, b, c, d
        rel a*a
        rel b*b
        rel c*c
        rel a*d - d*d
        rel a*c - b*d
        rel c*d
    """,
    "thm_ex_a_nc": """
        flavor noncommutative
        vars a, b, c, d
        rel a*a
        rel b*b
        rel c*c
        rel a*d - d*d
        rel a*c - b*d
        rel c*d
        rel a*b - b*a
        rel a*c - c*a
        rel a*d - d*a
        rel b*c - c*b
        rel b*d - d*b
        rel c*d - d*c
    """,
    "thm_ex_a_dual": """
        flavor lie
        vars a, b, c, d
        rel [a,b]
        rel [b,c]
        rel [a,c] + [b,d]
        rel [a,d] + d*d
    """,
    "thm_ex_b": """
        flavor noncommutative
        vars a, b, c, d
        rel a*a
        rel b*b
        rel d*d
        rel a*d
        rel c*a
        rel c*d
        rel d*a
        rel d*b
        rel d*c
        rel b*a
        rel a*b + a*c
        rel b*c + c*b
        rel b*c + c*c
    """,
    "thm_ex_b_dual": """
        flavor noncommutative
        vars a, b, c, d
        rel a*b - a*c
        rel b*c - c*b - c*c
        rel b*d
    """,
    "thm_ex_c": """
        flavor lie
        vars a, b, c
        rel b*b
        rel [a,b] - c*c
        rel [a,c]
    """,
    "thm_ex_c_dual": """
        flavor commutative
        vars a, b, c
        rel a*a
        rel b*c
        rel a*b + c*c
    """,
    "thm_ex_c_dual_sub": """
        flavor commutative
        vars a, b, c
        rel a*a
        rel b*c
    """,
    "strongly_free_4": """
        flavor noncommutative
        vars x1, x2, y1, y2
        rel y1*x1
        rel y1*x2
        rel y2*x1
        rel y2*x2
    """,
}

# the duals stated alongside their algebras
CORPUS_DUALS = {"thm_ex_a": "thm_ex_a_dual", "thm_ex_b": "thm_ex_b_dual", "thm_ex_c": "thm_ex_c_dual"}


def corpus_text(name: str) -> str:
    import textwrap

    return textwrap.dedent(_CORPUS_TEXT[name]).lstrip()


def corpus(prime: int | None = None) -> dict[str, Presentation]:
    from .fileformat import parse_presentation

    return {name: parse_presentation(corpus_text(name), prime) for name in _CORPUS_TEXT}


def corpus_entry(name: str, prime: int | None = None) -> Presentation:
    from .fileformat import parse_presentation

    if name not in _CORPUS_TEXT:
        raise KeyError(f"no corpus entry {name!r}; known: {', '.join(_CORPUS_TEXT)}")
    return parse_presentation(corpus_text(name), prime)
