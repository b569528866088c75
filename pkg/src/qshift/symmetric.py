"""The symmetric algebra S(g) with its Lie-Poisson bracket.

This commutative twin of :mod:`qshift.uea` is the classical oracle: the
argument shift ``P(Y + t*mu)`` and the symbol map ``U(g) -> S(g)`` are checked
against their quantum counterparts.  Monomials are sorted tuples of
generator ids, exactly as in the PBW engine, but multiplication just merges.
"""

from __future__ import annotations

from itertools import combinations, permutations
from numbers import Rational

from .lie import LieAlgebraSpec
from .uea import UElement, _acc, format_monomial, MINUS


class SElement:
    __slots__ = ("spec", "terms")

    def __init__(self, spec: LieAlgebraSpec, terms: dict | None = None):
        self.spec = spec
        self.terms = {m: c for m, c in terms.items() if c} if terms else {}

    @classmethod
    def scalar(cls, spec, c):
        return cls(spec, {(): c})

    @classmethod
    def generator(cls, spec, g):
        return cls(spec, {(g,): 1})

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def _coerce(self, other):
        if isinstance(other, SElement):
            if other.spec is not self.spec:
                raise ValueError("spec mismatch")
            return other
        if isinstance(other, Rational):
            return SElement.scalar(self.spec, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return SElement(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return SElement(self.spec, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return SElement(self.spec, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, SElement):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _acc(out, tuple(sorted(m1 + m2)), c1 * c2)
        return SElement(self.spec, out)

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self * other
        return NotImplemented

    def __pow__(self, p):
        out = SElement.scalar(self.spec, 1)
        for _ in range(p):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, SElement) else other
        if other is None:
            return NotImplemented
        return self.spec is other.spec and self.terms == other.terms

    __hash__ = None

    def partial(self, g: int) -> "SElement":
        out: dict = {}
        for m, c in self.terms.items():
            k = m.count(g)
            if k:
                i = m.index(g)
                _acc(out, m[:i] + m[i + 1:], c * k)
        return SElement(self.spec, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-len(m), m)):
            c = self.terms[m]
            a = -c if c < 0 else c
            body = str(a) if not m else (format_monomial(self.spec, m) if a == 1 else f"{a}*{format_monomial(self.spec, m)}")
            sep = (MINUS if c < 0 else "") if not parts else (f" {MINUS} " if c < 0 else " + ")
            parts.append(sep + body)
        return "".join(parts)

    __repr__ = __str__


def sgen(spec: LieAlgebraSpec, i: int, j: int) -> SElement:
    e = spec.entry(i, j)
    if e is None:
        return SElement(spec)
    return SElement(spec, {(e[1],): e[0]})


def poisson_bracket(P: SElement, Q: SElement) -> SElement:
    """Lie-Poisson bracket ``{P, Q} = sum dP/dY_a dQ/dY_b [Y_a, Y_b]``."""
    if P.spec is not Q.spec:
        raise ValueError("spec mismatch")
    spec = P.spec
    out = SElement(spec)
    pa = {a: P.partial(a) for a in {g for m in P.terms for g in m}}
    qb = {b: Q.partial(b) for b in {g for m in Q.terms for g in m}}
    for a, da in pa.items():
        for b, db in qb.items():
            br = spec.bracket(a, b)
            if not br:
                continue
            lin = SElement(spec, {(g,): c for g, c in br})
            out = out + da * db * lin
    return out


def shift_value(mu, g: int):
    """``mu(F_g)`` for a canonical generator: the matrix entry mu_ij."""
    i, j = mu.spec.generators[g]
    return mu[i, j]


def argument_shift(P: SElement, mu) -> list[SElement]:
    """Coefficients ``[P0, P1, ..., Pd]`` of ``P(Y + t*mu)`` in powers of ``t``."""
    spec = P.spec
    d = max(P.degree(), 0)
    coeffs = [dict() for _ in range(d + 1)]
    for m, c in P.terms.items():
        # expand prod (Y_g + t mu_g) over the factors of m
        partial = {((), 0): c}
        for g in m:
            s = shift_value(mu, g)
            nxt: dict = {}
            for (mono, k), v in partial.items():
                _acc(nxt, (mono + (g,), k), v)
                if s:
                    _acc(nxt, (mono, k + 1), v * s)
            partial = nxt
        for (mono, k), v in partial.items():
            _acc(coeffs[k], mono, v)
    return [SElement(spec, t) for t in coeffs]


def directional_derivative(P: SElement, mu) -> SElement:
    """The classical derivation ``sum_g mu(Y_g) d/dY_g``."""
    out = SElement(P.spec)
    for g in {g for m in P.terms for g in m}:
        s = shift_value(mu, g)
        if s:
            out = out + P.partial(g) * s
    return out


def symbol(f: UElement) -> SElement:
    """Top-degree component of a PBW element read as a commutative polynomial."""
    return SElement(f.spec, dict(f.homogeneous_part(f.degree()).terms))


def matrix_power(spec: LieAlgebraSpec, p: int) -> dict:
    """The commutative matrix ``Y^p`` with entries in S(g)."""
    N = spec.N
    Y = {(i, j): sgen(spec, i, j) for i in range(1, N + 1) for j in range(1, N + 1)}
    cur = {(i, j): SElement.scalar(spec, int(i == j)) for i in range(1, N + 1) for j in range(1, N + 1)}
    for _ in range(p):
        cur = {
            (i, j): sum((cur[i, k] * Y[k, j] for k in range(1, N + 1)), SElement(spec))
            for i in range(1, N + 1)
            for j in range(1, N + 1)
        }
    return cur


def trace_power(spec: LieAlgebraSpec, p: int) -> SElement:
    Yp = matrix_power(spec, p)
    return sum((Yp[i, i] for i in range(1, spec.N + 1)), SElement(spec))


def principal_minor_sum(spec: LieAlgebraSpec, m: int) -> SElement:
    """Sum of the principal m x m minors of the generator matrix (classical e_m)."""
    N = spec.N
    out = SElement(spec)
    for rows in combinations(range(1, N + 1), m):
        for perm in permutations(range(m)):
            sign = _perm_sign(perm)
            term = SElement.scalar(spec, sign)
            for a, b in enumerate(perm):
                term = term * sgen(spec, rows[a], rows[b])
            out = out + term
    return out


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
