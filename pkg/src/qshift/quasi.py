"""Quasi-derivations d_ij on U(g) and the directional operator D_mu.

On a PBW monomial ``w = x_1 x_2 ... x_k`` the quantum Leibniz rule says that
the matrix ``L(f) = f*1 - D(f)`` is multiplicative, ``L(fg) = L(f) L(g)``,
so ``D(w) = w*1 - L(x_1) ... L(x_k)`` with ``L(x) = x*1 - [d_ij x]``.  Every
entry of that product is a combination of subwords of ``w``, which are again
PBW monomials, so no straightening is needed.  The alternative
quasi-derivations (``kind="hat"``, gl_N only) satisfy the plus-sign rule for
the transposed matrix and use ``L(x) = x*1 + [d_ji x]`` instead.

Whether these monomial-wise definitions respect the defining relations of
U(g) is *checked* by :func:`leibniz_consistency_check`, not assumed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .lie import GL, LieAlgebraSpec, build_spec
from .tensor import TensorElement
from .uea import UElement, _acc, normal_form

STANDARD = "standard"
HAT = "hat"

_LMAT_LIMIT = 200_000


class ShiftMatrix:
    """The shift datum mu as an N x N rational matrix, ``mu[i, j] = mu(F_ij)``."""

    __slots__ = ("spec", "entries")

    def __init__(self, spec: LieAlgebraSpec, entries):
        N = spec.N
        if isinstance(entries, dict):
            ent = {k: Fraction(v) for k, v in entries.items() if v}
        else:
            rows = list(entries)
            if len(rows) != N or any(len(r) != N for r in rows):
                raise ValueError(f"mu must be {N}x{N}")
            ent = {(i + 1, j + 1): Fraction(v) for i, r in enumerate(rows) for j, v in enumerate(r) if Fraction(v)}
        self.spec = spec
        self.entries = {k: (v.numerator if v.denominator == 1 else v) for k, v in ent.items()}
        self.validate()

    def validate(self) -> None:
        spec = self.spec
        for (i, j) in self.entries:
            if not (1 <= i <= spec.N and 1 <= j <= spec.N):
                raise ValueError(f"mu index ({i},{j}) out of range")
        if not spec.has_form:
            return
        for i in range(1, spec.N + 1):
            for j in range(1, spec.N + 1):
                a = self[i, j]
                b = self[spec.conj(j), spec.conj(i)]
                if a != -spec.theta(i, j) * b:
                    raise ValueError(
                        f"mu is not in {spec.name}^*: mu[{i},{j}]={a} but "
                        f"mu[{spec.conj(j)},{spec.conj(i)}]={b}"
                    )

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def as_dict(self) -> dict:
        return dict(self.entries)

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.entries)

    def diagonal(self) -> list:
        return [self[i, i] for i in range(1, self.spec.N + 1)]

    def trace(self):
        return sum(self.diagonal())

    def power(self, p: int) -> dict:
        N = self.spec.N
        cur = {(i, i): 1 for i in range(1, N + 1)}
        for _ in range(p):
            nxt = {}
            for (i, k), a in cur.items():
                for j in range(1, N + 1):
                    b = self[k, j]
                    if b:
                        nxt[i, j] = nxt.get((i, j), 0) + a * b
            cur = {k: v for k, v in nxt.items() if v}
        return cur

    @classmethod
    def generic(cls, spec: LieAlgebraSpec) -> "ShiftMatrix":
        """Default generic mu: diag(1..N) for gl_N; diag(1..n, [0], -n..-1) for
        the split forms; block skew-symmetric with blocks k for canonical o_2n."""
        N = spec.N
        if spec.family == GL:
            return cls(spec, {(i, i): i for i in range(1, N + 1)})
        if spec.family == "o2n-canonical":
            ent = {}
            for k in range(1, spec.n + 1):
                ent[2 * k - 1, 2 * k] = k
                ent[2 * k, 2 * k - 1] = -k
            return cls(spec, ent)
        ent = {}
        for i in range(1, spec.n + 1):
            ent[i, i] = i
            ent[spec.conj(i), spec.conj(i)] = -i
        return cls(spec, ent)

    @classmethod
    def from_json(cls, data) -> "ShiftMatrix":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            spec = build_spec(data["family"], int(data["N"]))
            rows = [[Fraction(str(v)) for v in row] for row in data["entries"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed mu file: {exc}") from exc
        return cls(spec, rows)

    @classmethod
    def load(cls, path) -> "ShiftMatrix":
        return cls.from_json(Path(path).read_text())

    def to_json(self) -> str:
        N = self.spec.N
        rows = [[str(Fraction(self[i, j])) for j in range(1, N + 1)] for i in range(1, N + 1)]
        return json.dumps({"family": self.spec.family, "N": N, "entries": rows})

    def __repr__(self):
        return f"ShiftMatrix({self.spec.name}, {self.entries})"


def _lmatrix(spec: LieAlgebraSpec, kind: str, w: tuple) -> dict:
    """``L(x_1) ... L(x_k)`` as ``{(a, b): {subword: coeff}}``."""
    if not w:
        return {(a, a): {(): 1} for a in range(1, spec.N + 1)}
    cache = spec._lmat_cache
    key = (kind, w)
    hit = cache.get(key)
    if hit is not None:
        return hit
    prev = _lmatrix(spec, kind, w[:-1])
    x = w[-1]
    # scalar part of L(x), grouped by row
    rows: dict = {}
    for (i, j), v in spec.deriv(x):
        if kind == STANDARD:
            rows.setdefault(i, []).append((j, -v))
        else:
            rows.setdefault(j, []).append((i, v))
    out: dict = {}
    for (a, c), entry in prev.items():
        dest = out.setdefault((a, c), {})
        for sub, v in entry.items():
            _acc(dest, sub + (x,), v)
        for b, s in rows.get(c, ()):
            dest = out.setdefault((a, b), {})
            for sub, v in entry.items():
                _acc(dest, sub, v * s)
    out = {k: v for k, v in out.items() if v}
    if len(cache) > _LMAT_LIMIT:
        cache.clear()
    cache[key] = out
    return out


def _check_kind(spec, kind):
    if kind not in (STANDARD, HAT):
        raise ValueError(f"unknown quasi-derivation kind {kind!r}")
    if kind == HAT and spec.family != GL:
        raise ValueError("the hat quasi-derivations are defined for gl_N only")


def _monomial_derivative(spec, kind, w, i, j) -> dict:
    M = _lmatrix(spec, kind, w)
    if kind == STANDARD:
        out = {sub: -v for sub, v in M.get((i, j), {}).items()}
        if i == j:
            _acc(out, w, 1)
    else:
        out = dict(M.get((j, i), {}))
        if i == j:
            _acc(out, w, -1)
    return out


def quasi_derive(spec: LieAlgebraSpec, i: int, j: int, f: UElement, kind: str = STANDARD) -> UElement:
    """``d_ij f`` (or the hat variant)."""
    _check_kind(spec, kind)
    if f.spec is not spec:
        raise ValueError("spec mismatch")
    if not (1 <= i <= spec.N and 1 <= j <= spec.N):
        raise IndexError(f"quasi-derivation index ({i},{j}) out of range for N={spec.N}")
    out: dict = {}
    for w, c in f.terms.items():
        if not w:
            continue
        for sub, v in _monomial_derivative(spec, kind, w, i, j).items():
            _acc(out, sub, c * v)
    return UElement._raw(spec, out)


def derivative_matrix(f: UElement, kind: str = STANDARD) -> dict:
    """All ``d_ij f`` at once, as a dict ``(i, j) -> UElement`` (nonzero only)."""
    spec = f.spec
    _check_kind(spec, kind)
    acc: dict = {}
    for w, c in f.terms.items():
        if not w:
            continue
        M = _lmatrix(spec, kind, w)
        for (a, b), entry in M.items():
            key = (a, b) if kind == STANDARD else (b, a)
            sgn = -1 if kind == STANDARD else 1
            dest = acc.setdefault(key, {})
            for sub, v in entry.items():
                _acc(dest, sub, sgn * c * v)
        for a in range(1, spec.N + 1):
            _acc(acc.setdefault((a, a), {}), w, c if kind == STANDARD else -c)
    return {k: UElement._raw(spec, v) for k, v in acc.items() if v}


def d_mu(mu: ShiftMatrix, f: UElement) -> UElement:
    """``D_mu f = tr(mu D) f = sum_ij mu_ij d_ji f``."""
    spec = f.spec
    if mu.spec is not spec:
        raise ValueError("mu and f belong to different algebras")
    tr = mu.trace()
    mu_items = list(mu.entries.items())
    out: dict = {}
    for w, c in f.terms.items():
        if not w:
            continue
        if tr:
            _acc(out, w, c * tr)
        M = _lmatrix(spec, STANDARD, w)
        for (i, j), m in mu_items:
            entry = M.get((j, i))
            if entry:
                s = -c * m
                for sub, v in entry.items():
                    _acc(out, sub, s * v)
    return UElement._raw(spec, out)


def d_mu_iterate(mu: ShiftMatrix, f: UElement, p: int) -> UElement:
    if p < 0:
        raise ValueError("p must be nonnegative")
    for _ in range(p):
        f = d_mu(mu, f)
    return f


def apply_D(x, label: int, kind: str = STANDARD) -> TensorElement:
    """``D_label x``: attach a new slot carrying the matrix of quasi-derivations."""
    if isinstance(x, UElement):
        spec = x.spec
        D = derivative_matrix(x, kind)
        return TensorElement(spec, (label,), {((i,), (j,)): v for (i, j), v in D.items()})
    spec = x.spec
    if label in x.labels:
        raise ValueError(f"slot {label} already used in {x.labels}")
    labels = tuple(sorted(x.labels + (label,)))
    k = labels.index(label)
    out: dict = {}
    for (r, c), v in x.entries.items():
        if not isinstance(v, UElement):
            continue
        for (i, j), d in derivative_matrix(v, kind).items():
            out[r[:k] + (i,) + r[k:], c[:k] + (j,) + c[k:]] = d
    return TensorElement(spec, labels, out)


def omega_map(f: UElement) -> UElement:
    """The automorphism ``E_kl -> -E_lk`` of U(gl_N), extended multiplicatively."""
    spec = f.spec
    if spec.family != GL:
        raise ValueError("omega_map is defined for gl_N only")
    images = [UElement.generator(spec, spec.index[j, i]) * -1 for (i, j) in spec.generators]
    out = UElement.scalar(spec, 0)
    for w, c in f.terms.items():
        term = UElement.scalar(spec, c)
        for g in w:
            term = term * images[g]
        out = out + term
    return out


def hat_via_omega(f: UElement, i: int, j: int) -> UElement:
    """``-omega(d_ji omega(f))``, which should equal the hat ``d_ij f``."""
    return -omega_map(quasi_derive(f.spec, j, i, omega_map(f)))


# -- well-definedness ----------------------------------------------------------

def random_element(spec: LieAlgebraSpec, rng: random.Random, max_degree: int = 2, max_terms: int = 3) -> UElement:
    """A random element: a short sum of normal-ordered random words."""
    total = UElement.scalar(spec, 0)
    for _ in range(rng.randint(1, max_terms)):
        word = [rng.randrange(spec.dim) for _ in range(rng.randint(0, max_degree))]
        c = rng.choice([-3, -2, -1, 1, 2, 3, Fraction(1, 2), Fraction(-2, 3)])
        total = total + normal_form(spec, word) * c
    return total


def leibniz_rhs(f: UElement, g: UElement, kind: str = STANDARD) -> dict:
    """Right-hand side of the (quantum) Leibniz rule for all ``(i, j)``."""
    spec = f.spec
    N = spec.N
    Df, Dg = derivative_matrix(f, kind), derivative_matrix(g, kind)
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            acc = UElement.scalar(spec, 0)
            a, b = Df.get((i, j)), Dg.get((i, j))
            if a is not None:
                acc = acc + a * g
            if b is not None:
                acc = acc + f * b
            for k in range(1, N + 1):
                if kind == STANDARD:
                    x, y = Df.get((i, k)), Dg.get((k, j))
                    if x is not None and y is not None:
                        acc = acc - x * y
                else:
                    x, y = Df.get((k, j)), Dg.get((i, k))
                    if x is not None and y is not None:
                        acc = acc + x * y
            if acc:
                out[i, j] = acc
    return out


@dataclass
class ConsistencyReport:
    spec: str
    trials: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def leibniz_consistency_check(
    spec: LieAlgebraSpec,
    trials: int,
    seed: int = 0,
    kind: str = STANDARD,
    pairs=None,
    max_degree: int = 2,
) -> ConsistencyReport:
    """Compare ``d_ij(f g)`` with the Leibniz right-hand side on random pairs."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    _check_kind(spec, kind)
    rng = random.Random(seed)
    report = ConsistencyReport(spec.name, trials)
    for t in range(trials):
        if pairs is not None:
            f, g = pairs[t % len(pairs)]
        else:
            f = random_element(spec, rng, max_degree)
            g = random_element(spec, rng, max_degree)
        lhs = derivative_matrix(f * g, kind)
        rhs = leibniz_rhs(f, g, kind)
        for key in set(lhs) | set(rhs):
            a = lhs.get(key, UElement.scalar(spec, 0))
            b = rhs.get(key, UElement.scalar(spec, 0))
            if a != b:
                report.violations.append((str(f), str(g), key, str(a - b)))
    return report
