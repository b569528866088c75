"""Center generators, Mishchenko-Fomenko generator families, Pfaffians, T_i."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial

from . import caps
from .lie import GL, O_CANON, O_SPLIT, LieAlgebraSpec
from .quasi import ShiftMatrix, d_mu_iterate
from .symmetric import _perm_sign
from .tensor import (
    antisymmetrizer,
    brauer_symmetrizer,
    gamma,
    generator_matrix,
    generator_power,
    symmetrizer_h,
    trace_with_factors,
)
from .uea import UElement, gen


def gelfand_generator(spec: LieAlgebraSpec, powers) -> UElement:
    """``tr_{1..m} F_1^{p_1} ... F_m^{p_m}``, i.e. the product of the traces ``tr F^{p_a}``."""
    powers = list(powers)
    if any(p < 1 for p in powers):
        raise ValueError("powers must be positive")
    caps.check_slots(len(powers))
    caps.check_degree(sum(powers))
    out = UElement.scalar(spec, 1)
    for p in powers:
        Fp = generator_power(spec, p)
        out = out * sum((Fp[i, i] for i in range(1, spec.N + 1) if (i, i) in Fp), UElement.scalar(spec, 0))
    return out


def _factors(spec, m, k, mu):
    if mu is None:
        if k:
            raise ValueError("k > 0 needs a shift matrix mu")
        mu_mat = None
    else:
        if mu.spec is not spec:
            raise ValueError("mu belongs to a different algebra")
        mu_mat = mu.as_dict()
    F = generator_matrix(spec)
    return [mu_mat] * k + [F] * (m - k)


def _check_mk(m, k):
    if m < 1 or not (0 <= k <= m):
        raise ValueError(f"need 1 <= m and 0 <= k <= m, got m={m}, k={k}")


def phi(spec: LieAlgebraSpec, m: int, k: int = 0, mu: ShiftMatrix | None = None) -> UElement:
    """``phi^(k)_m``: antisymmetrizer trace for gl_N and sp_N, Brauer form for o_N."""
    _check_mk(m, k)
    if spec.is_orthogonal:
        if m > spec.N:
            raise ValueError(f"m={m} exceeds N={spec.N}")
        op = brauer_symmetrizer(spec, m)
        return trace_with_factors(op, _factors(spec, m, k, mu)) * gamma(m, spec.omega)
    limit = spec.N
    if m > limit:
        raise ValueError(f"m={m} exceeds N={limit}")
    return trace_with_factors(antisymmetrizer(spec, m), _factors(spec, m, k, mu))


def phi_brauer(spec: LieAlgebraSpec, m: int, k: int = 0, mu: ShiftMatrix | None = None) -> UElement:
    """Symplectic ``gamma_m(omega) tr S^(m) mu...F...`` (m <= n), the twin of :func:`phi`."""
    if not spec.is_symplectic:
        raise ValueError("phi_brauer is the symplectic Brauer form; use phi otherwise")
    _check_mk(m, k)
    op = brauer_symmetrizer(spec, m)
    return trace_with_factors(op, _factors(spec, m, k, mu)) * gamma(m, spec.omega)


def psi(spec: LieAlgebraSpec, m: int, k: int = 0, mu: ShiftMatrix | None = None) -> UElement:
    """``psi^(k)_m = tr H^(m) mu_1...mu_k E_{k+1}...E_m`` (gl_N only)."""
    if spec.family != GL:
        raise ValueError("psi is defined for gl_N only")
    _check_mk(m, k)
    return trace_with_factors(symmetrizer_h(spec, m), _factors(spec, m, k, mu))


# -- Pfaffians -----------------------------------------------------------------

def _matchings(items):
    """Perfect matchings as lists of pairs ``(a, b)``, ``a < b``, with their signs."""
    if not items:
        yield [], 1
        return
    a = items[0]
    for pos in range(1, len(items)):
        b = items[pos]
        rest = items[1:pos] + items[pos + 1:]
        sign = -1 if (pos - 1) % 2 else 1
        for tail, s in _matchings(rest):
            yield [(a, b)] + tail, sign * s


def _check_even_orthogonal(spec):
    if spec.family not in (O_SPLIT, O_CANON) or spec.N % 2:
        raise ValueError(f"the Pfaffian needs an even orthogonal algebra, got {spec.name}")


def _pf_terms(spec: LieAlgebraSpec, mu, order: int):
    """Coefficient of ``z^(order - n)`` in ``Pf(mu + F z^-1)``: ``order`` factors come from mu."""
    n = spec.n
    total = UElement.scalar(spec, 0)
    if spec.family == O_CANON:
        for pairs, sign in _matchings(list(range(1, 2 * n + 1))):
            total = total + _pair_products(spec, mu, pairs, order, lambda a, b: (a, b)) * sign
        return total
    # split presentation: (1/(2^n n!)) sum_sigma sgn(sigma) prod X_{sigma(2k-1), sigma(2k)'}
    scale = Fraction(1, 2 ** n * factorial(n))
    for perm in permutations(range(1, 2 * n + 1)):
        pairs = [(perm[2 * t], perm[2 * t + 1]) for t in range(n)]
        term = _pair_products(spec, mu, pairs, order, lambda a, b: (a, spec.conj(b)))
        if term:
            total = total + term * (_perm_sign([p - 1 for p in perm]) * scale)
    return total


def _pair_products(spec, mu, pairs, order, index):
    """Sum over ways of choosing ``order`` of the factors from mu (others from F), in order."""
    # dynamic programme over factors: state = number of mu factors used
    states = {0: UElement.scalar(spec, 1)}
    for a, b in pairs:
        i, j = index(a, b)
        nxt: dict = {}
        for used, val in states.items():
            f = gen(spec, i, j)
            if f:
                x = val * f
                nxt[used] = nxt[used] + x if used in nxt else x
            if mu is not None and used < order:
                s = mu[i, j]
                if s:
                    x = val * s
                    nxt[used + 1] = nxt[used + 1] + x if used + 1 in nxt else x
        states = {u: v for u, v in nxt.items() if v}
    return states.get(order, UElement.scalar(spec, 0))


def pfaffian(spec: LieAlgebraSpec) -> UElement:
    """``Pf F`` (matching sum in the canonical presentation, full sum in the split one)."""
    _check_even_orthogonal(spec)
    return _pf_terms(spec, None, 0)


def pf_shift_coeffs(spec: LieAlgebraSpec, mu: ShiftMatrix) -> list[UElement]:
    """``[pi_(0), ..., pi_(n)]`` with ``Pf(mu + F z^-1) = sum_k pi_(k) z^(k - n)``."""
    _check_even_orthogonal(spec)
    if mu.spec is not spec:
        raise ValueError("mu belongs to a different algebra")
    return [_pf_terms(spec, mu, k) for k in range(spec.n + 1)]


def pi_matrix(spec: LieAlgebraSpec) -> dict:
    """``Pi = [d_ij Pf F]`` as a dict ``(i, j) -> UElement``."""
    from .quasi import derivative_matrix

    return derivative_matrix(pfaffian(spec))


# -- T_i and genericity ---------------------------------------------------------

def check_generic(mu: ShiftMatrix) -> None:
    """Reject a mu that is not diagonal with pairwise distinct entries.

    For the split B/C/D presentations this is the same as mu_1..mu_n being
    nonzero and distinct with mu_i != -mu_j.
    """
    spec = mu.spec
    if spec.family == O_CANON:
        raise ValueError("the commutant criterion needs a diagonal mu; use the split presentation")
    if not mu.is_diagonal():
        raise ValueError("mu must be diagonal for the commutant criterion")
    diag = mu.diagonal()
    if len(set(diag)) != len(diag):
        raise ValueError(f"mu is not generic: repeated diagonal entries {diag}")


def criterion_range(spec: LieAlgebraSpec) -> range:
    return range(1, spec.N + 1) if spec.family == GL else range(1, spec.n + 1)


def t_element(spec: LieAlgebraSpec, mu: ShiftMatrix, i: int) -> UElement:
    """``T_i = sum_{k != i} F_ik F_ki / (mu_i - mu_k)``."""
    check_generic(mu)
    if i not in criterion_range(spec):
        raise ValueError(f"T_{i} is outside the index range of {spec.name}")
    out = UElement.scalar(spec, 0)
    for k in range(1, spec.N + 1):
        if k == i:
            continue
        a, b = gen(spec, i, k), gen(spec, k, i)
        if a and b:
            out = out + (a * b) * Fraction(1, mu[i, i] - mu[k, k])
    return out


# -- families ---------------------------------------------------------------------

@dataclass
class GeneratorFamily:
    spec: LieAlgebraSpec
    mu: ShiftMatrix
    members: list = field(default_factory=list)

    def add(self, label: dict, element: UElement) -> None:
        if element.spec is not self.spec:
            raise ValueError("member belongs to a different algebra")
        if any(l == label for l, _ in self.members):
            raise ValueError(f"duplicate label {label}")
        self.members.append((label, element))

    def elements(self) -> list[UElement]:
        return [e for _, e in self.members]

    def to_json(self) -> str:
        return json.dumps([{"label": l, "element": str(e)} for l, e in self.members], ensure_ascii=False)


def _iterate_label(base, m, p):
    return {"kind": "dmu-iterate", "base": base, "m": m, "k_or_p": p}


def amu_generating_family(spec: LieAlgebraSpec, mu: ShiftMatrix) -> GeneratorFamily:
    """``D_mu^p phi^(0)_m`` over the ranges of the type, plus Pfaffian iterates in type D."""
    if mu.spec is not spec:
        raise ValueError("mu belongs to a different algebra")
    fam = GeneratorFamily(spec, mu)
    if spec.family == GL:
        ms = range(1, spec.N + 1)
    elif spec.is_orthogonal and spec.N % 2 == 0:
        ms = range(2, spec.N - 1, 2)
    else:
        ms = range(2, 2 * spec.n + 1, 2)
    for m in ms:
        z = phi(spec, m, 0)
        for p in range(m):
            fam.add(_iterate_label("phi", m, p), z)
            z = d_mu_iterate(mu, z, 1)
    if spec.is_orthogonal and spec.N % 2 == 0:
        z = pfaffian(spec)
        for p in range(spec.n):
            fam.add(_iterate_label("pi", spec.n, p), z)
            z = d_mu_iterate(mu, z, 1)
    return fam
