"""Sparse calculus in End(C^N)^{(x)m} (x) U(g).

A :class:`TensorElement` carries a sorted tuple of integer slot labels and a
dictionary ``(row, col) -> coefficient`` where ``row`` and ``col`` are index
tuples aligned with the labels.  The entry at ``(row, col)`` is the coefficient
of ``e_{row_1 col_1} (x) ... (x) e_{row_m col_m}``.  Coefficients are exact
rationals or :class:`~qshift.uea.UElement` values; U-coefficients are always
multiplied in the order the tensor factors are written.

Elements on different label sets multiply, add and compare after implicit
extension by the identity, which is how the subscript notation ``E_1 E_2``,
``P_01 F_2`` etc. reads.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from numbers import Rational

from . import caps
from .lie import LieAlgebraSpec
from .uea import UElement


def _is_zero(v) -> bool:
    return not v


def _as_u(spec, v) -> UElement:
    return v if isinstance(v, UElement) else UElement.scalar(spec, v)


class TensorElement:
    __slots__ = ("spec", "labels", "entries")

    def __init__(self, spec: LieAlgebraSpec, labels, entries: dict | None = None):
        labels = tuple(labels)
        if list(labels) != sorted(set(labels)):
            raise ValueError(f"labels must be strictly increasing, got {labels}")
        caps.check_slots(len(labels))
        self.spec = spec
        self.labels = labels
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @property
    def m(self) -> int:
        return len(self.labels)

    def __bool__(self):
        return bool(self.entries)

    def is_constant(self) -> bool:
        return all(not isinstance(v, UElement) or v.is_scalar() for v in self.entries.values())

    # -- shape manipulation ---------------------------------------------
    def extend(self, labels) -> "TensorElement":
        """The same element on a larger label set (identity on new slots)."""
        labels = tuple(sorted(set(labels) | set(self.labels)))
        if labels == self.labels:
            return self
        new = [l for l in labels if l not in self.labels]
        pos = {l: k for k, l in enumerate(self.labels)}
        out = {}
        N = self.spec.N
        for idx in product(range(1, N + 1), repeat=len(new)):
            extra = dict(zip(new, idx))
            for (r, c), v in self.entries.items():
                row = tuple(r[pos[l]] if l in pos else extra[l] for l in labels)
                col = tuple(c[pos[l]] if l in pos else extra[l] for l in labels)
                out[row, col] = v
        return TensorElement(self.spec, labels, out)

    def relabel(self, mapping: dict) -> "TensorElement":
        """Rename slots (``mapping`` old -> new); a permutation of the slots."""
        new_labels = [mapping.get(l, l) for l in self.labels]
        order = sorted(range(len(new_labels)), key=lambda k: new_labels[k])
        out = {}
        for (r, c), v in self.entries.items():
            out[tuple(r[k] for k in order), tuple(c[k] for k in order)] = v
        return TensorElement(self.spec, [new_labels[k] for k in order], out)

    # -- linear structure ------------------------------------------------
    def _aligned(self, other: "TensorElement"):
        if other.spec is not self.spec:
            raise ValueError("spec mismatch")
        labels = set(self.labels) | set(other.labels)
        return self.extend(labels), other.extend(labels)

    def __add__(self, other):
        if isinstance(other, (Rational, UElement)):
            other = identity(self.spec, self.labels) * other
        if not isinstance(other, TensorElement):
            return NotImplemented
        a, b = self._aligned(other)
        out = dict(a.entries)
        for k, v in b.entries.items():
            w = out.get(k)
            out[k] = v if w is None else w + v
        return TensorElement(self.spec, a.labels, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorElement(self.spec, self.labels, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        if isinstance(other, (Rational, UElement)):
            other = identity(self.spec, self.labels) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return TensorElement(self.spec, self.labels, {k: v * other for k, v in self.entries.items()})
        if isinstance(other, UElement):
            return TensorElement(self.spec, self.labels, {k: v * other for k, v in self.entries.items()})
        if not isinstance(other, TensorElement):
            return NotImplemented
        return _tensor_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (Rational, UElement)):
            return TensorElement(self.spec, self.labels, {k: other * v for k, v in self.entries.items()})
        return NotImplemented

    def __truediv__(self, other):
        return self * (Fraction(1) / other)

    def __pow__(self, p: int):
        out = identity(self.spec, self.labels)
        for _ in range(p):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        a, b = self._aligned(other)
        keys = set(a.entries) | set(b.entries)
        for k in keys:
            x, y = a.entries.get(k, 0), b.entries.get(k, 0)
            if isinstance(x, UElement) or isinstance(y, UElement):
                if _as_u(self.spec, x) != _as_u(self.spec, y):
                    return False
            elif x != y:
                return False
        return True

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.entries

    # -- traces ------------------------------------------------------------
    def trace(self, labels=None):
        """Partial trace over ``labels`` (all slots when ``None``).

        Tracing every slot returns a :class:`UElement`.
        """
        labels = self.labels if labels is None else tuple(labels)
        if isinstance(labels, int):
            labels = (labels,)
        for l in labels:
            if l not in self.labels:
                raise ValueError(f"slot {l} not present in {self.labels}")
        keep = [k for k, l in enumerate(self.labels) if l not in labels]
        drop = [k for k, l in enumerate(self.labels) if l in labels]
        out: dict = {}
        for (r, c), v in self.entries.items():
            if any(r[k] != c[k] for k in drop):
                continue
            key = (tuple(r[k] for k in keep), tuple(c[k] for k in keep))
            w = out.get(key)
            out[key] = v if w is None else w + v
        if not keep:
            return _as_u(self.spec, out.get(((), ()), 0))
        return TensorElement(self.spec, [self.labels[k] for k in keep], out)

    def transpose_prime(self, label: int) -> "TensorElement":
        """Form transposition ``(X')_ij = theta_ij X_{j*i*}`` on one slot."""
        spec = self.spec
        if not spec.has_form:
            raise ValueError("transpose_prime needs an orthogonal or symplectic form; gl_N has none")
        k = self.labels.index(label)
        out = {}
        for (r, c), v in self.entries.items():
            # entry (r, c) of X sits at (c_k*, r_k*) of X'
            i, j = spec.conj(c[k]), spec.conj(r[k])
            row = r[:k] + (i,) + r[k + 1:]
            col = c[:k] + (j,) + c[k + 1:]
            out[row, col] = v * spec.theta(i, j)
        return TensorElement(spec, self.labels, out)

    def commutator(self, other: "TensorElement") -> "TensorElement":
        return self * other - other * self

    # -- output ------------------------------------------------------------
    def to_json(self) -> str:
        rows = []
        for (r, c) in sorted(self.entries):
            rows.append({"row": list(r), "col": list(c), "element": str(_as_u(self.spec, self.entries[r, c]))})
        return json.dumps({"m": self.m, "labels": list(self.labels), "entries": rows})

    def __repr__(self):
        return f"TensorElement({self.spec.name}, labels={self.labels}, {len(self.entries)} entries)"


def _tensor_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    if x.spec is not y.spec:
        raise ValueError("spec mismatch")
    labels = tuple(sorted(set(x.labels) | set(y.labels)))
    px = {l: k for k, l in enumerate(x.labels)}
    py = {l: k for k, l in enumerate(y.labels)}
    shared = [l for l in x.labels if l in py]
    sx = [px[l] for l in shared]
    sy = [py[l] for l in shared]
    row_src = [(0, px[l]) if l in px else (1, py[l]) for l in labels]
    col_src = [(1, py[l]) if l in py else (0, px[l]) for l in labels]

    groups: dict = {}
    for (r, c), v in y.entries.items():
        groups.setdefault(tuple(r[k] for k in sy), []).append((r, c, v))

    out: dict = {}
    for (rx, cx), vx in x.entries.items():
        bucket = groups.get(tuple(cx[k] for k in sx))
        if not bucket:
            continue
        for ry, cy, vy in bucket:
            src_r = (rx, ry)
            src_c = (cx, cy)
            row = tuple(src_r[a][b] for a, b in row_src)
            col = tuple(src_c[a][b] for a, b in col_src)
            v = vx * vy
            if not v:
                continue
            key = (row, col)
            w = out.get(key)
            out[key] = v if w is None else w + v
    return TensorElement(x.spec, labels, out)


# -- constant operators -------------------------------------------------------

def identity(spec: LieAlgebraSpec, labels=()) -> TensorElement:
    labels = tuple(sorted(labels))
    N = spec.N
    return TensorElement(spec, labels, {(t, t): 1 for t in product(range(1, N + 1), repeat=len(labels))})


def _two_slot(spec, a, b, entries):
    if a == b:
        raise ValueError("the two slots of P/Q must differ")
    if a < b:
        return TensorElement(spec, (a, b), entries)
    return TensorElement(spec, (b, a), {((r[1], r[0]), (c[1], c[0])): v for (r, c), v in entries.items()})


def P(spec: LieAlgebraSpec, a: int, b: int) -> TensorElement:
    """Permutation operator ``P_ab = sum e_ij (x) e_ji``."""
    N = spec.N
    return _two_slot(spec, a, b, {((i, j), (j, i)): 1 for i in range(1, N + 1) for j in range(1, N + 1)})


def Q(spec: LieAlgebraSpec, a: int, b: int) -> TensorElement:
    """``Q_ab = sum theta_ij e_ij (x) e_{i*j*}`` for the form of ``spec``."""
    if not spec.has_form:
        raise ValueError("Q is defined for orthogonal and symplectic algebras only")
    N = spec.N
    ent = {
        ((i, spec.conj(i)), (j, spec.conj(j))): spec.theta(i, j)
        for i in range(1, N + 1)
        for j in range(1, N + 1)
    }
    return _two_slot(spec, a, b, ent)


def Phi(spec: LieAlgebraSpec, a: int, b: int) -> TensorElement:
    return P(spec, a, b) - Q(spec, a, b)


def matrix(spec: LieAlgebraSpec, label: int, mat) -> TensorElement:
    """Embed an N x N matrix (dict ``(i, j) -> value`` or nested list) at a slot."""
    if not isinstance(mat, dict):
        mat = {(i + 1, j + 1): v for i, row in enumerate(mat) for j, v in enumerate(row)}
    return TensorElement(spec, (label,), {((i,), (j,)): v for (i, j), v in mat.items()})


def generator_matrix(spec: LieAlgebraSpec) -> dict:
    """The matrix ``F = [F_ij]`` of generators as a dict of UElements."""
    from .uea import gen

    N = spec.N
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            f = gen(spec, i, j)
            if f:
                out[i, j] = f
    return out


def embed_generator_matrix(spec: LieAlgebraSpec, label: int) -> TensorElement:
    """``E_a`` (resp. ``F_a``): the generator matrix placed at slot ``label``."""
    return matrix(spec, label, generator_matrix(spec))


def matmul(spec, x: dict, y: dict) -> dict:
    N = spec.N
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            acc = None
            for k in range(1, N + 1):
                a = x.get((i, k))
                b = y.get((k, j))
                if a is None or b is None:
                    continue
                t = a * b
                acc = t if acc is None else acc + t
            if acc:
                out[i, j] = acc
    return out


_power_cache: dict = {}


def generator_power(spec: LieAlgebraSpec, p: int) -> dict:
    """``F^p`` as a dict ``(i, j) -> UElement`` (``F^0`` is the identity)."""
    key = (spec.family, spec.N, p)
    hit = _power_cache.get(key)
    if hit is not None:
        return hit
    if p == 0:
        res = {(i, i): UElement.scalar(spec, 1) for i in range(1, spec.N + 1)}
    else:
        res = matmul(spec, generator_power(spec, p - 1), generator_matrix(spec))
    _power_cache[key] = res
    return res


def generator_power_at(spec: LieAlgebraSpec, label: int, p: int) -> TensorElement:
    return matrix(spec, label, generator_power(spec, p))


# -- symmetrizers ----------------------------------------------------------

def antisymmetrizer(spec: LieAlgebraSpec, m: int, labels=None) -> TensorElement:
    """A^(m) via ``A^(m) = (1/m)(1 - P_1m - ... - P_{m-1,m}) A^(m-1)``."""
    return _group_average(spec, m, -1, labels)


def symmetrizer_h(spec: LieAlgebraSpec, m: int, labels=None) -> TensorElement:
    """H^(m) via ``H^(m) = (1/m)(1 + P_1m + ... + P_{m-1,m}) H^(m-1)``."""
    return _group_average(spec, m, 1, labels)


def _group_average(spec, m, sign, labels):
    if m < 1:
        raise ValueError("m must be at least 1")
    caps.check_slots(m)
    cur = identity(spec, (1,))
    for k in range(2, m + 1):
        step = identity(spec, range(1, k + 1))
        for a in range(1, k):
            step = step + P(spec, a, k) * sign
        cur = (step * cur) * Fraction(1, k)
    if labels is not None:
        cur = cur.relabel(dict(zip(range(1, m + 1), labels)))
    return cur


def permutation_operator(spec: LieAlgebraSpec, perm, labels) -> TensorElement:
    """The operator sending the factor in slot ``labels[k]`` to slot ``labels[perm[k]]``."""
    labels = tuple(labels)
    N = spec.N
    m = len(labels)
    order = sorted(range(m), key=lambda k: labels[k])
    out = {}
    for c in product(range(1, N + 1), repeat=m):
        r = [0] * m
        for k in range(m):
            r[perm[k]] = c[k]
        out[tuple(r[k] for k in order), tuple(c[k] for k in order)] = 1
    return TensorElement(spec, sorted(labels), out)


def antisymmetrizer_by_sum(spec: LieAlgebraSpec, m: int) -> TensorElement:
    """A^(m) summed over all m! permutations (independent oracle)."""
    from .symmetric import _perm_sign

    total = TensorElement(spec, range(1, m + 1))
    for perm in permutations(range(m)):
        total = total + permutation_operator(spec, perm, range(1, m + 1)) * _perm_sign(perm)
    return total * Fraction(1, factorial(m))


def gamma(m: int, omega) -> Fraction:
    """``gamma_m(omega) = (omega + m - 2)/(omega + 2m - 2)``."""
    den = omega + 2 * m - 2
    if den == 0:
        raise ZeroDivisionError(f"gamma_{m}({omega}) has a vanishing denominator")
    return Fraction(omega + m - 2, den)


def brauer_symmetrizer(spec: LieAlgebraSpec, m: int) -> TensorElement:
    """The symmetrizer S^(m) of the Brauer algebra action on slots 1..m.

    Orthogonal: ``(1/m!) prod_{a<b} (1 + P_ab/(b-a) - Q_ab/(N/2 + b - a - 1))``.
    Symplectic: ``(1/m!) prod_{a<b} (1 - P_ab/(b-a) - Q_ab/(n - b + a + 1))``,
    available for ``m <= n`` only.  Factors are multiplied in lexicographic
    order of the pairs ``(a, b)``.
    """
    if not spec.has_form:
        raise ValueError("the Brauer symmetrizer needs an orthogonal or symplectic algebra")
    if m < 1:
        raise ValueError("m must be at least 1")
    caps.check_slots(m)
    if spec.is_symplectic and m > spec.n:
        raise ValueError(
            f"symplectic S^({m}) is only defined here for m <= n = {spec.n}; "
            "use the antisymmetrizer form of phi for larger m"
        )
    labels = tuple(range(1, m + 1))
    cur = identity(spec, labels)
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            if spec.is_symplectic:
                cp, cq = Fraction(-1, b - a), Fraction(-1, spec.n - b + a + 1)
            else:
                cp, cq = Fraction(1, b - a), -1 / (Fraction(spec.N, 2) + b - a - 1)
            factor = identity(spec, labels) + P(spec, a, b) * cp + Q(spec, a, b) * cq
            cur = cur * factor
    return cur * Fraction(1, factorial(m))


def trace_with_factors(op: TensorElement, factors) -> UElement:
    """``tr_{1..m} op X_1 ... X_m`` for single-slot matrices ``X_a``.

    ``op`` lives on slots ``1..m`` and ``factors[a-1]`` is a dict
    ``(i, j) -> value`` placed at slot ``a``.  The U-parts multiply in slot
    order, which is the order of the product ``X_1 X_2 ... X_m``.
    """
    spec = op.spec
    total = UElement.scalar(spec, 0)
    acc: dict = {}
    for (r, c), v in op.entries.items():
        term = v
        for a, X in enumerate(factors):
            x = X.get((c[a], r[a]))
            if x is None:
                term = 0
                break
            term = term * x
            if not term:
                break
        if not term:
            continue
        if isinstance(term, UElement):
            for mono, coef in term.terms.items():
                w = acc.get(mono, 0) + coef
                if w:
                    acc[mono] = w
                else:
                    acc.pop(mono, None)
        else:
            w = acc.get((), 0) + term
            if w:
                acc[()] = w
            else:
                acc.pop((), None)
    total = UElement(spec, acc)
    return total
