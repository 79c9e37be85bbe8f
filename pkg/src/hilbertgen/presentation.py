"""Monomials, homogeneous forms and presentations F/(f_1, ..., f_r).

Monomials are tuples of ints. Noncommutative (and Lie) monomials are words
of generator indices; commutative monomials are exponent vectors of length n.
Lie-type relations are stored already expanded over words, with [a,b] read
as ab + ba, so a Lie relation is a word-form whose coefficients on x_j x_l and
x_l x_j agree.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .fp_linalg import PrimeField
from .series import AlgebraType

Monomial = tuple


class Flavor(str, enum.Enum):
    COMMUTATIVE = "commutative"
    NONCOMMUTATIVE = "noncommutative"
    LIE = "lie"

    @classmethod
    def parse(cls, word: str) -> Flavor:
        aliases = {"comm": cls.COMMUTATIVE, "c": cls.COMMUTATIVE, "nc": cls.NONCOMMUTATIVE,
                   "noncomm": cls.NONCOMMUTATIVE, "assoc": cls.NONCOMMUTATIVE}
        word = word.strip().lower()
        if word in aliases:
            return aliases[word]
        return cls(word)

    @property
    def uses_words(self) -> bool:
        return self is not Flavor.COMMUTATIVE

    def dual(self) -> Flavor:
        return {Flavor.COMMUTATIVE: Flavor.LIE, Flavor.LIE: Flavor.COMMUTATIVE}.get(self, self)


def monomial_degree(flavor: Flavor, m: Monomial) -> int:
    return sum(m) if flavor is Flavor.COMMUTATIVE else len(m)


def monomial_key(flavor: Flavor, m: Monomial):
    """Sort key realizing the degree-lexicographic order (first generator largest)."""
    if flavor is Flavor.COMMUTATIVE:
        return (sum(m), tuple(-e for e in m))
    return (len(m), m)


@lru_cache(maxsize=None)
def _enumerate(flavor: Flavor, n: int, d: int) -> tuple[Monomial, ...]:
    if flavor is Flavor.COMMUTATIVE:
        out = []
        for combo in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
        return tuple(out)
    return tuple(itertools.product(range(n), repeat=d))


def enumerate_monomials(flavor: Flavor | str, n: int, d: int) -> list[Monomial]:
    """All monomials of degree d in degree-lexicographic order."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    return list(_enumerate(Flavor.parse(flavor) if isinstance(flavor, str) else flavor, n, d))


@lru_cache(maxsize=None)
def monomial_index(flavor: Flavor, n: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(_enumerate(flavor, n, d))}


def slice_dimension(flavor: Flavor, n: int, d: int) -> int:
    """Dimension of the degree-d part of the free algebra."""
    if flavor is Flavor.COMMUTATIVE:
        return comb(n + d - 1, d)
    return n ** d


def word_index(word: Sequence[int], n: int) -> int:
    idx = 0
    for x in word:
        idx = idx * n + x
    return idx


@dataclass(frozen=True)
class Form:
    """Homogeneous form: ``terms`` holds (monomial, residue) pairs, sorted in
    monomial order, no zero coefficients. An empty ``terms`` is the zero form."""

    flavor: Flavor
    degree: int
    terms: tuple[tuple[Monomial, int], ...]

    @classmethod
    def from_terms(cls, flavor: Flavor, terms: Mapping[Monomial, object] | Iterable,
                   field_: PrimeField, degree: int | None = None) -> Form:
        acc: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            m = tuple(m)
            acc[m] = (acc.get(m, 0) + field_.reduce(c)) % field_.p
        degs = {monomial_degree(flavor, m) for m in acc}
        if len(degs) > 1:
            raise ValueError("non-homogeneous relation")
        if degree is None:
            if not degs:
                raise ValueError("degree required for the zero form")
            degree = degs.pop()
        elif degs and degs != {degree}:
            raise ValueError("non-homogeneous relation")
        kept = sorted(((m, c) for m, c in acc.items() if c), key=lambda mc: monomial_key(flavor, mc[0]))
        return cls(flavor, degree, tuple(kept))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Monomial) -> int:
        for mm, c in self.terms:
            if mm == m:
                return c
        return 0

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def scaled(self, c: int, field_: PrimeField) -> Form:
        return Form.from_terms(self.flavor, {m: v * c for m, v in self.terms}, field_, self.degree)

    def to_vector(self, n: int) -> list[int]:
        index = monomial_index(self._basis_flavor, n, self.degree)
        vec = [0] * len(index)
        for m, c in self.terms:
            vec[index[m]] = c
        return vec

    @property
    def _basis_flavor(self) -> Flavor:
        return Flavor.COMMUTATIVE if self.flavor is Flavor.COMMUTATIVE else Flavor.NONCOMMUTATIVE

    def with_flavor(self, flavor: Flavor) -> Form:
        if flavor.uses_words != self.flavor.uses_words:
            raise ValueError("cannot relabel between word and exponent monomials")
        return replace(self, flavor=flavor)


def lie_form(n: int, squares: Mapping[int, object], brackets: Mapping[tuple[int, int], object],
             field_: PrimeField) -> Form:
    """sum c_j x_j^2 + sum c_jl [x_j, x_l] expanded over words."""
    terms: dict[tuple[int, ...], int] = {}
    for j, c in squares.items():
        terms[(j, j)] = (terms.get((j, j), 0) + field_.reduce(c)) % field_.p
    for (j, l), c in brackets.items():
        c = field_.reduce(c)
        for w in ((j, l), (l, j)):
            terms[w] = (terms.get(w, 0) + c) % field_.p
    return Form.from_terms(Flavor.LIE, terms, field_, 2)


def is_lie_relation(form: Form) -> bool:
    if form.degree != 2:
        return False
    d = form.as_dict()
    return all(d.get((b, a), 0) == c for (a, b), c in d.items())


@dataclass(frozen=True)
class Presentation:
    flavor: Flavor
    names: tuple[str, ...]
    relations: tuple[Form, ...] = ()
    field: PrimeField = field(default_factory=PrimeField)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "relations", tuple(self.relations))
        if not self.names:
            raise ValueError("need at least one generator")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        if self.flavor in (Flavor.COMMUTATIVE, Flavor.LIE) and self.field.p == 2:
            raise ValueError("characteristic 2 not allowed for commutative/lie flavor")
        n = len(self.names)
        for f in self.relations:
            if f.degree < 2:
                raise ValueError("relations must have degree >= 2")
            if f.flavor.uses_words != self.flavor.uses_words:
                raise ValueError("relation flavor does not match presentation")
            for m, _ in f.terms:
                if self.flavor is Flavor.COMMUTATIVE:
                    if len(m) != n:
                        raise ValueError("exponent vector has wrong length")
                elif any(not 0 <= x < n for x in m):
                    raise ValueError("unknown generator index")
            if self.flavor is Flavor.LIE and not is_lie_relation(f):
                raise ValueError("not a Lie-type relation")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def r(self) -> int:
        return len(self.relations)

    @property
    def max_degree(self) -> int:
        return max((f.degree for f in self.relations), default=0)

    def with_relations(self, relations: Iterable[Form]) -> Presentation:
        return replace(self, relations=tuple(relations))

    def drop(self, index: int) -> Presentation:
        return self.with_relations(f for i, f in enumerate(self.relations) if i != index)

    def form(self, terms, degree: int | None = None) -> Form:
        """Build a relation of this presentation's flavor from monomial→coef."""
        return Form.from_terms(self.flavor, terms, self.field, degree)


def expand_lie(p: Presentation) -> Presentation:
    """The same relations read in the free associative algebra."""
    if p.flavor is not Flavor.LIE:
        raise ValueError("expand_lie needs a lie-flavored presentation")
    for f in p.relations:
        if not is_lie_relation(f):
            raise ValueError("not a Lie-type relation")
    return Presentation(Flavor.NONCOMMUTATIVE, p.names,
                        tuple(f.with_flavor(Flavor.NONCOMMUTATIVE) for f in p.relations), p.field)


def as_associative(p: Presentation) -> Presentation:
    return expand_lie(p) if p.flavor is Flavor.LIE else p


def type_of_presentation(p: Presentation) -> AlgebraType:
    return AlgebraType(p.n, tuple(f.degree for f in p.relations))


def sorted_by_degree(p: Presentation) -> Presentation:
    return p.with_relations(sorted(p.relations, key=lambda f: f.degree))
