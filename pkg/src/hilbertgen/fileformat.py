"""Plain-text presentation files.

    # comment
    flavor commutative          # commutative | noncommutative | lie
    prime 2147483647            # optional
    vars x, y
    rel x*x
    rel 2*x*y - 3/2*y^2
    rel [x,y] - y*y             # lie only: [a,b] means ab + ba

Coefficients are integers or a/b, reduced mod p. Commutative products are
normalized; noncommutative products keep their order.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fp_linalg import DEFAULT_PRIME, PrimeField
from .presentation import Flavor, Form, Presentation, monomial_key


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line, self.col = line, col


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*/^\[\],]))")


def _tokenize(text: str, line: int, offset: int):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            return out
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"malformed token {text[pos]!r}", line, offset + pos + 1)
        kind = m.lastgroup
        out.append((kind, m.group(kind), offset + m.start(kind) + 1))
        pos = m.end()


class _ExprParser:
    def __init__(self, tokens, line, names, flavor, field):
        self.toks, self.i, self.line = tokens, 0, line
        self.index = {nm: k for k, nm in enumerate(names)}
        self.n = len(names)
        self.flavor, self.field = flavor, field

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end_col())

    def end_col(self):
        if not self.toks:
            return 1
        kind, val, col = self.toks[-1]
        return col + len(val)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            got = tok[1] if tok[0] else "end of line"
            raise ParseError(f"expected {want}, got {got!r}", self.line, tok[2])
        self.i += 1
        return tok

    def generator(self):
        kind, val, col = self.take("name")
        if val not in self.index:
            raise ParseError(f"unknown generator {val!r}", self.line, col)
        return self.index[val]

    def number(self) -> Fraction:
        _, val, col = self.take("num")
        num = Fraction(int(val))
        if self.peek()[1] == "/":
            self.take("op", "/")
            _, den, dcol = self.take("num")
            if int(den) == 0:
                raise ParseError("zero denominator", self.line, dcol)
            num /= int(den)
        return num

    def term(self):
        """Returns (coefficient, list of words, start col); a bracket yields two words."""
        start = self.peek()[2]
        coef = Fraction(1)
        factors: list[list[tuple[int, ...]]] = []
        expect_factor = True
        while expect_factor:
            kind, val, col = self.peek()
            if kind == "num":
                coef *= self.number()
            elif kind == "name":
                g = self.generator()
                power = 1
                if self.peek()[1] == "^":
                    self.take("op", "^")
                    power = int(self.take("num")[1])
                factors.append([(g,) * power])
            elif val == "[":
                if self.flavor is not Flavor.LIE:
                    raise ParseError("bracket allowed only in lie flavor", self.line, col)
                self.take("op", "[")
                a = self.generator()
                self.take("op", ",")
                b = self.generator()
                self.take("op", "]")
                factors.append([(a, b), (b, a)])
            else:
                got = val if kind else "end of line"
                raise ParseError(f"expected coefficient or generator, got {got!r}", self.line, col)
            if self.peek()[1] == "*":
                self.take("op", "*")
            else:
                expect_factor = False
        words = [()]
        for alternatives in factors:
            words = [w + alt for w in words for alt in alternatives]
        return coef, words, start

    def expression(self):
        terms: dict[tuple, Fraction] = {}
        degree = None
        sign = 1
        first = True
        while True:
            kind, val, col = self.peek()
            if val in ("+", "-"):
                self.take("op")
                sign = -1 if val == "-" else 1
            elif not first:
                if kind is None:
                    break
                raise ParseError(f"expected + or -, got {val!r}", self.line, col)
            coef, words, start = self.term()
            for w in words:
                if degree is None:
                    degree = len(w)
                elif len(w) != degree:
                    raise ParseError("non-homogeneous relation", self.line, start)
                key = w
                if self.flavor is Flavor.COMMUTATIVE:
                    e = [0] * self.n
                    for g in w:
                        e[g] += 1
                    key = tuple(e)
                terms[key] = terms.get(key, 0) + sign * coef
            sign, first = 1, False
            if self.peek()[0] is None:
                break
        if degree is None:
            raise ParseError("empty relation", self.line, 1)
        if degree < 2:
            raise ParseError("relations must have degree >= 2", self.line, 1)
        return terms, degree


def parse_presentation(text: str, prime: int | None = None) -> Presentation:
    """Parse the grammar above; ``prime`` overrides a ``prime`` line."""
    flavor = None
    names: list[str] | None = None
    p = None
    rels: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        keyword, _, rest = stripped.partition(" ")
        rest_col = indent + len(keyword) + 2
        if keyword == "flavor":
            try:
                flavor = Flavor.parse(rest)
            except ValueError:
                raise ParseError(f"unknown flavor {rest.strip()!r}", lineno, rest_col) from None
        elif keyword == "prime":
            if not rest.strip().isdigit():
                raise ParseError("prime must be an integer", lineno, rest_col)
            p = int(rest)
        elif keyword == "vars":
            names = [v.strip() for v in rest.split(",")]
            for v in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", v):
                    raise ParseError(f"bad generator name {v!r}", lineno, rest_col)
        elif keyword == "rel":
            rels.append((lineno, rest_col - 1, rest))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, indent + 1)
    if flavor is None:
        raise ParseError("missing 'flavor' line", 1, 1)
    if names is None:
        raise ParseError("missing 'vars' line", 1, 1)
    if prime is not None:
        p = prime
    if p is None:
        p = DEFAULT_PRIME
    if p == 2 and flavor is not Flavor.NONCOMMUTATIVE:
        raise ParseError("characteristic 2 not allowed for commutative/lie flavor", 1, 1)
    try:
        field = PrimeField(p)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None
    forms = []
    for lineno, offset, body in rels:
        toks = _tokenize(body, lineno, offset)
        parser = _ExprParser(toks, lineno, names, flavor, field)
        terms, degree = parser.expression()
        try:
            forms.append(Form.from_terms(flavor, terms, field, degree))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, offset + 1) from None
    try:
        return Presentation(flavor, tuple(names), tuple(forms), field)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None


def small_rational(a: int, p: int) -> Fraction:
    """Rational with small numerator and denominator congruent to a mod p,
    falling back to the symmetric integer representative."""
    a %= p
    bound = int((p // 2) ** 0.5)
    r0, r1 = p, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 != 0 and abs(s1) <= bound:
        f = Fraction(r1, s1)
        if f.numerator * pow(f.denominator, -1, p) % p == a:
            return f
    return Fraction(a - p if a > p // 2 else a)


def _monomial_text(flavor: Flavor, m: tuple, names) -> str:
    if flavor is Flavor.COMMUTATIVE:
        parts = []
        for i, e in enumerate(m):
            parts += [names[i]] * e
        return "*".join(parts)
    return "*".join(names[g] for g in m)


def _join(pieces: list[tuple[Fraction, str]]) -> str:
    out = []
    for k, (c, mono) in enumerate(pieces):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = mono if mag == 1 else f"{mag}*{mono}"
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out) if out else "0"


def format_form(form: Form, names, flavor: Flavor, p: int) -> str:
    if flavor is Flavor.LIE:
        d = form.as_dict()
        pieces = []
        for (a, b), c in sorted(d.items(), key=lambda kv: monomial_key(flavor, kv[0])):
            if a == b:
                pieces.append((small_rational(c, p), f"{names[a]}*{names[a]}"))
            elif a < b:
                pieces.append((small_rational(c, p), f"[{names[a]},{names[b]}]"))
        return _join(pieces)
    return _join([(small_rational(c, p), _monomial_text(flavor, m, names)) for m, c in form.terms])


def serialize_presentation(p: Presentation) -> str:
    lines = [f"flavor {p.flavor.value}"]
    if p.field.p != DEFAULT_PRIME:
        lines.append(f"prime {p.field.p}")
    lines.append("vars " + ", ".join(p.names))
    for f in p.relations:
        lines.append("rel " + format_form(f, p.names, p.flavor, p.field.p))
    return "\n".join(lines) + "\n"
