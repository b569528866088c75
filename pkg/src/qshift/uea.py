"""Exact PBW arithmetic in the universal enveloping algebra U(g).

A PBW monomial is stored as a nondecreasing tuple of generator ids, so
``F_a^2 F_b`` is ``(a, a, b)``.  Elements are dictionaries mapping monomials to
exact rational coefficients (``int`` or :class:`fractions.Fraction`).

Straightening uses the leftmost out-of-order pair: ``g * (h, rest)`` with
``h < g`` is rewritten as ``h * (g * rest) + [g, h] * rest``.  Products of a
generator with a monomial and of two monomials are memoised on the spec.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from . import caps
from .lie import LieAlgebraSpec

Monomial = tuple  # nondecreasing tuple of generator ids

MINUS = "−"


def _acc(out: dict, mono, c) -> None:
    v = out.get(mono, 0) + c
    if v:
        out[mono] = v
    else:
        out.pop(mono, None)


def _lmul(spec: LieAlgebraSpec, g: int, m: Monomial) -> dict:
    """Normal form of ``F_g * m`` for a PBW monomial ``m`` (read-only result)."""
    if not m or g <= m[0]:
        return {(g,) + m: 1}
    key = (g, m)
    cache = spec._lmul_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    h, rest = m[0], m[1:]
    out: dict = {}
    for mono, c in _lmul(spec, g, rest).items():
        for mono2, c2 in _lmul(spec, h, mono).items():
            _acc(out, mono2, c * c2)
    for b, cb in spec.bracket(g, h):
        for mono, c in _lmul(spec, b, rest).items():
            _acc(out, mono, cb * c)
    cache[key] = out
    return out


def mono_mul(spec: LieAlgebraSpec, a: Monomial, b: Monomial) -> dict:
    """Normal form of the product of two PBW monomials (read-only result)."""
    if not a or not b or a[-1] <= b[0]:
        return {a + b: 1}
    key = (a, b)
    cache = spec._mono_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    cur = {b: 1}
    for g in reversed(a):
        nxt: dict = {}
        for mono, c in cur.items():
            for mono2, c2 in _lmul(spec, g, mono).items():
                _acc(nxt, mono2, c * c2)
        cur = nxt
    cache[key] = cur
    return cur


def clear_caches(spec: LieAlgebraSpec) -> None:
    spec._lmul_cache.clear()
    spec._mono_cache.clear()
    spec._lmat_cache.clear()


class UElement:
    """An element of U(g) in PBW normal form.

    Supports ``+``, ``-``, ``*`` with other elements of the same algebra and
    with rational scalars.  Instances are treated as immutable.
    """

    __slots__ = ("spec", "terms")

    def __init__(self, spec: LieAlgebraSpec, terms: dict | None = None):
        self.spec = spec
        self.terms = {m: c for m, c in terms.items() if c} if terms else {}

    @classmethod
    def _raw(cls, spec, terms):
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.terms = terms
        return obj

    @classmethod
    def scalar(cls, spec: LieAlgebraSpec, c) -> "UElement":
        return cls._raw(spec, {(): c} if c else {})

    @classmethod
    def generator(cls, spec: LieAlgebraSpec, g: int) -> "UElement":
        return cls._raw(spec, {(g,): 1})

    # -- inspection ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def is_scalar(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self):
        return self.terms.get((), 0)

    def homogeneous_part(self, d: int) -> "UElement":
        return UElement._raw(self.spec, {m: c for m, c in self.terms.items() if len(m) == d})

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, UElement):
            if other.spec is not self.spec:
                raise ValueError(f"spec mismatch: {self.spec.name} vs {other.spec.name}")
            return other
        if isinstance(other, Rational):
            return UElement.scalar(self.spec, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return UElement._raw(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return UElement._raw(self.spec, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, -c)
        return UElement._raw(self.spec, out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Rational):
            if not other:
                return UElement._raw(self.spec, {})
            return UElement._raw(self.spec, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, UElement):
            return NotImplemented
        if other.spec is not self.spec:
            raise ValueError(f"spec mismatch: {self.spec.name} vs {other.spec.name}")
        if len(other.terms) == 1 and () in other.terms:
            return self * other.terms[()]
        if len(self.terms) == 1 and () in self.terms:
            return other * self.terms[()]
        if self.terms and other.terms:
            caps.check_degree(self.degree() + other.degree())
        spec = self.spec
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                for m, c3 in mono_mul(spec, m1, m2).items():
                    _acc(out, m, c * c3)
        return UElement._raw(spec, out)

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, p: int):
        out = UElement.scalar(self.spec, 1)
        for _ in range(p):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = UElement.scalar(self.spec, other)
        if not isinstance(other, UElement):
            return NotImplemented
        return self.spec is other.spec and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"UElement({self.spec.name}: {format_element(self)})"

    def __str__(self):
        return format_element(self)


# -- ring operations as functions -------------------------------------------

def one(spec: LieAlgebraSpec) -> UElement:
    return UElement.scalar(spec, 1)


def zero(spec: LieAlgebraSpec) -> UElement:
    return UElement.scalar(spec, 0)


def gen(spec: LieAlgebraSpec, i: int, j: int) -> UElement:
    """The matrix entry F_ij (E_ij for gl_N) as an element of U(g)."""
    e = spec.entry(i, j)
    if e is None:
        return zero(spec)
    c, g = e
    return UElement._raw(spec, {(g,): c})


def multiply(f: UElement, g: UElement) -> UElement:
    return f * g


def add(f: UElement, g: UElement) -> UElement:
    return f + g


def scale(c, f: UElement) -> UElement:
    return f * c


def commutator(f: UElement, g: UElement) -> UElement:
    return f * g - g * f


def commutator_generators(spec: LieAlgebraSpec, a: int, b: int) -> UElement:
    return UElement(spec, {(g,): c for g, c in spec.bracket(a, b)})


def normal_form(spec: LieAlgebraSpec, word) -> UElement:
    """PBW normal form of a product of canonical generator ids, left to right."""
    caps.check_degree(len(word))
    cur: dict = {(): 1}
    for g in reversed(word):
        nxt: dict = {}
        for mono, c in cur.items():
            for mono2, c2 in _lmul(spec, g, mono).items():
                _acc(nxt, mono2, c * c2)
        cur = nxt
    return UElement._raw(spec, cur)


# -- canonical text ---------------------------------------------------------

def format_monomial(spec: LieAlgebraSpec, mono: Monomial) -> str:
    parts = []
    k = 0
    while k < len(mono):
        g = mono[k]
        e = k
        while e < len(mono) and mono[e] == g:
            e += 1
        name = spec.gen_name(g)
        parts.append(name if e - k == 1 else f"{name}^{e - k}")
        k = e
    return "".join(parts)


def _term_order(mono):
    return (-len(mono), mono)


def format_element(f: UElement) -> str:
    if not f.terms:
        return "0"
    out = []
    for mono in sorted(f.terms, key=_term_order):
        c = f.terms[mono]
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = format_monomial(f.spec, mono)
        else:
            body = f"{a}*{format_monomial(f.spec, mono)}"
        if not out:
            out.append(MINUS + body if neg else body)
        else:
            out.append((f" {MINUS} " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<gen>(?P<letter>[EF])\[\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\](?:\^(?P<exp>\d+))?)"
    r"|(?P<num>\d+(?:/\d+)?)|(?P<op>[+\-−*]))"
)


class ParseError(ValueError):
    pass


def parse_element(spec: LieAlgebraSpec, text: str) -> UElement:
    """Parse the canonical text grammar; unordered monomials are normalised."""
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at position {pos}: {text[pos:pos + 12]!r}")
        pos = m.end()
        if m.group("gen"):
            letter = m.group("letter")
            if letter != spec.letter:
                raise ParseError(f"generator {m.group('gen')!r} does not belong to {spec.name}")
            i, j = int(m.group("i")), int(m.group("j"))
            if not (1 <= i <= spec.N and 1 <= j <= spec.N):
                raise ParseError(f"index out of range in {m.group('gen')!r} for N={spec.N}")
            tokens.append(("gen", (i, j, int(m.group("exp") or 1))))
        elif m.group("num"):
            try:
                tokens.append(("num", Fraction(m.group("num"))))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {m.group('num')!r}") from None
        else:
            op = m.group("op")
            tokens.append(("op", "-" if op == MINUS else op))
    if not tokens:
        raise ParseError("empty expression")

    total = zero(spec)
    k = 0
    while k < len(tokens):
        sign = 1
        while k < len(tokens) and tokens[k][0] == "op" and tokens[k][1] in "+-":
            if tokens[k][1] == "-":
                sign = -sign
            k += 1
        coeff = Fraction(1)
        seen = False
        if k < len(tokens) and tokens[k][0] == "num":
            coeff = tokens[k][1]
            seen = True
            k += 1
        term = one(spec)
        while k < len(tokens):
            kind, val = tokens[k]
            if kind == "op" and val == "*":
                # a single "*" must sit between a coefficient or generator and a generator
                if not seen or k + 1 >= len(tokens) or tokens[k + 1][0] != "gen":
                    raise ParseError("misplaced '*'")
                k += 1
                continue
            if kind != "gen":
                break
            i, j, e = val
            term = term * gen(spec, i, j) ** e
            seen = True
            k += 1
        if not seen:
            raise ParseError("dangling operator")
        c = sign * coeff
        total = total + term * (c.numerator if c.denominator == 1 else c)
    return total
