"""Tensor and quasi-derivation identities, each as a :class:`CheckReport`.

All checks are exact: the two sides are built independently and compared
entry by entry, or a target is decomposed over an explicit candidate set by
an exact linear solve.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from .checks import CheckReport, run_check
from .generators import gelfand_generator, pfaffian, phi, phi_brauer, t_element
from .lie import GL, LieAlgebraSpec
from .linsolve import solve_in_span, tensor_vector
from .quasi import ShiftMatrix, apply_D, d_mu_iterate, hat_via_omega, quasi_derive
from .tensor import (
    P,
    Q,
    Phi,
    TensorElement,
    antisymmetrizer,
    brauer_symmetrizer,
    embed_generator_matrix,
    gamma,
    generator_power,
    generator_power_at,
    identity,
    matrix,
    permutation_operator,
)
from .uea import UElement


def _diff(a: TensorElement, b: TensorElement):
    """``None`` when equal, otherwise a short description of the first mismatch."""
    if a == b:
        return None
    d = a - b
    x, y = d._aligned(d)
    for (r, c), v in sorted(x.entries.items()):
        if v:
            return f"labels {x.labels} entry {r},{c}: {v}"
    return "mismatch"


def _prod(spec, factors, labels):
    out = identity(spec, labels)
    for f in factors:
        out = out * f
    return out


# -- type A ----------------------------------------------------------------------

def power_commutator(spec: LieAlgebraSpec, r: int, s: int) -> CheckReport:
    """``[E_1^r, E_0^s] = sum_a (E_0^{a-1} E_1^{r+s-a} - E_0^{r+s-a} E_1^{a-1}) P_01``."""

    def body():
        E1 = lambda p: generator_power_at(spec, 1, p)  # noqa: E731
        E0 = lambda p: generator_power_at(spec, 0, p)  # noqa: E731
        lhs = E1(r) * E0(s) - E0(s) * E1(r)
        rhs = TensorElement(spec, (0, 1))
        P01 = P(spec, 0, 1)
        for a in range(1, min(r, s) + 1):
            rhs = rhs + E0(a - 1) * E1(r + s - a) * P01 - E0(r + s - a) * E1(a - 1) * P01
        return _diff(lhs, rhs)

    return run_check(f"identity.power-commutator[{spec.name},r={r},s={s}]", body)


def partial_trace_P(spec: LieAlgebraSpec, mat: dict, tag: str) -> CheckReport:
    """``tr_1 X_1 P_01 = tr_1 P_01 X_0 = X_0``."""

    def body():
        X0, X1 = matrix(spec, 0, mat), matrix(spec, 1, mat)
        P01 = P(spec, 0, 1)
        return _diff((X1 * P01).trace((1,)), X0) or _diff((P01 * X0).trace((1,)), X0)

    return run_check(f"identity.partial-trace-P[{spec.name},{tag}]", body)


def antisym_absorbs_P(spec: LieAlgebraSpec, m: int) -> CheckReport:
    """``A P_{0i1}...P_{0is} = A P_{i1i2}...P_{i1is} P_{0i1} = (-1)^{s-1} A P_{0i1}``."""

    def body():
        A = antisymmetrizer(spec, m)
        for s in range(1, m + 1):
            for idx in combinations(range(1, m + 1), s):
                for order in permutations(idx):
                    i1 = order[0]
                    lhs = A * _prod(spec, [P(spec, 0, i) for i in order], (0,) + idx)
                    mid = A * _prod(spec, [P(spec, i1, i) for i in order[1:]] + [P(spec, 0, i1)], (0,) + idx)
                    rhs = A * P(spec, 0, i1) * (-1) ** (s - 1)
                    w = _diff(lhs, mid) or _diff(lhs, rhs)
                    if w:
                        return f"indices {order}: {w}"
        return None

    return run_check(f"identity.antisym-absorbs-P[{spec.name},m={m}]", body)


def trace_conjugation(spec: LieAlgebraSpec, m: int, k: int, mu: ShiftMatrix) -> CheckReport:
    """``tr A^(m) X = tr A^(m) p(X)`` for ``X = mu_1..mu_k E_{k+1}..E_m`` and every permutation ``p``."""

    def body():
        labels = tuple(range(1, m + 1))
        A = antisymmetrizer(spec, m)
        X = identity(spec, labels)
        for a in labels:
            X = X * (matrix(spec, a, mu.as_dict()) if a <= k else embed_generator_matrix(spec, a))
        base = (A * X).trace()
        for perm in permutations(range(m)):
            inv = [0] * m
            for a, b in enumerate(perm):
                inv[b] = a
            Pp = permutation_operator(spec, perm, labels)
            Pinv = permutation_operator(spec, inv, labels)
            conj = Pp * X * Pinv
            val = (A * conj).trace()
            if val != base:
                return f"permutation {perm}: {val - base}"
        return None

    return run_check(f"identity.trace-conjugation[{spec.name},m={m},k={k}]", body)


def antisym_partial_trace(spec: LieAlgebraSpec, m: int, s: int) -> CheckReport:
    """``tr_{m-s+2..m} A^(m) = C(N-m+s-1, s-1) / C(m, s-1) * A^(m-s+1)``."""

    def body():
        N = spec.N
        A = antisymmetrizer(spec, m)
        lhs = A.trace(tuple(range(m - s + 2, m + 1))) if s > 1 else A
        coeff = Fraction(comb(N - m + s - 1, s - 1), comb(m, s - 1))
        rhs = antisymmetrizer(spec, m - s + 1) * coeff
        return _diff(lhs, rhs)

    return run_check(f"identity.antisym-partial-trace[{spec.name},m={m},s={s}]", body)


def reduced_trace(spec: LieAlgebraSpec, mu: ShiftMatrix, r: int, s: int) -> CheckReport:
    """``tr E^r mu E^s - tr mu E^{r+s}`` is a central combination of ``tr mu E^q``, ``q < r+s``."""
    from .checks import trace_mu_power

    def body():
        Er, Es = generator_power(spec, r), generator_power(spec, s)
        lhs = UElement.scalar(spec, 0)
        for (i, j), x in Er.items():
            for jj in range(1, spec.N + 1):
                v = mu[j, jj]
                y = Es.get((jj, i))
                if v and y is not None:
                    lhs = lhs + x * y * v
        target = lhs - trace_mu_power(spec, mu, r + s)
        cands = []
        for q in range(r + s):
            base = trace_mu_power(spec, mu, q) if q else UElement.scalar(spec, mu.trace())
            for z in central_monomials(spec, r + s - q):
                c = z * base
                if c:
                    cands.append(c.terms)
        sol = solve_in_span(target.terms, cands)
        return None if sol.solvable else f"residual {target} not in the span"

    return run_check(f"identity.reduced-trace[{spec.name},r={r},s={s}]", body)


# -- B/C/D operators ---------------------------------------------------------------

def pq_sign(spec: LieAlgebraSpec) -> CheckReport:
    """``P_12 Q_12 = Q_12 P_12 = +Q_12`` (orthogonal) or ``-Q_12`` (symplectic)."""

    def body():
        sign = -1 if spec.is_symplectic else 1
        p, q = P(spec, 1, 2), Q(spec, 1, 2)
        return _diff(p * q, q * sign) or _diff(q * p, q * sign)

    return run_check(f"identity.PQ-sign[{spec.name}]", body)


def q_sandwich(spec: LieAlgebraSpec, q: int) -> CheckReport:
    """``Q_01 F_0^q Q_01 = Q_01 F_1^q Q_01 = Q_01 tr F^q``."""

    def body():
        Q01 = Q(spec, 0, 1)
        Fq = generator_power(spec, q)
        tr = sum((Fq[i, i] for i in range(1, spec.N + 1) if (i, i) in Fq), UElement.scalar(spec, 0))
        a = Q01 * generator_power_at(spec, 0, q) * Q01
        b = Q01 * generator_power_at(spec, 1, q) * Q01
        return _diff(a, b) or _diff(a, Q01 * tr)

    return run_check(f"identity.Q-sandwich[{spec.name},q={q}]", body)


def q_transpose(spec: LieAlgebraSpec, q: int) -> CheckReport:
    """``Q_01 F_1^q = Q_01 (F_0^q)'`` and ``F_1^q Q_01 = (F_0^q)' Q_01``."""

    def body():
        Q01 = Q(spec, 0, 1)
        F0t = generator_power_at(spec, 0, q).transpose_prime(0)
        F1 = generator_power_at(spec, 1, q)
        return _diff(Q01 * F1, Q01 * F0t) or _diff(F1 * Q01, F0t * Q01)

    return run_check(f"identity.Q-transpose[{spec.name},q={q}]", body)


def q_exchange(spec: LieAlgebraSpec) -> CheckReport:
    """``Q_01 P_02 = Q_01 Q_12`` and ``Q_01 Q_02 = Q_01 P_12``."""

    def body():
        Q01 = Q(spec, 0, 1)
        return _diff(Q01 * P(spec, 0, 2), Q01 * Q(spec, 1, 2)) or _diff(Q01 * Q(spec, 0, 2), Q01 * P(spec, 1, 2))

    return run_check(f"identity.Q-exchange[{spec.name}]", body)


def p_phi_chain(spec: LieAlgebraSpec, s: int) -> CheckReport:
    """``P_01 Phi_02..Phi_0s = Phi_12..Phi_1s P_01`` and
    ``Q_01 Phi_02..Phi_0s = (-1)^{s-1} Q_01 Phi_1s..Phi_12``."""

    def body():
        labels = tuple(range(0, s + 1))
        chain0 = _prod(spec, [Phi(spec, 0, i) for i in range(2, s + 1)], labels)
        chain1 = _prod(spec, [Phi(spec, 1, i) for i in range(2, s + 1)], labels)
        rev1 = _prod(spec, [Phi(spec, 1, i) for i in range(s, 1, -1)], labels)
        w = _diff(P(spec, 0, 1) * chain0, chain1 * P(spec, 0, 1))
        if w:
            return f"P line: {w}"
        w = _diff(Q(spec, 0, 1) * chain0, Q(spec, 0, 1) * rev1 * (-1) ** (s - 1))
        return f"Q line: {w}" if w else None

    return run_check(f"identity.P-Phi-chain[{spec.name},s={s}]", body)


def trace_mu_q(spec: LieAlgebraSpec, mu: ShiftMatrix, tag: str = "") -> CheckReport:
    """``tr_0 mu_0 Q_01 = -tr_0 mu_1 Q_01 = -mu_1`` for skew mu."""

    def body():
        Q01 = Q(spec, 0, 1)
        m0, m1 = matrix(spec, 0, mu.as_dict()), matrix(spec, 1, mu.as_dict())
        a = (m0 * Q01).trace((0,))
        b = -(m1 * Q01).trace((0,))
        return _diff(a, b) or _diff(a, -m1)

    return run_check(f"identity.trace-mu-Q[{spec.name}{tag}]", body)


def central_monomials(spec: LieAlgebraSpec, max_degree: int) -> list[UElement]:
    """Nonzero products of ``tr F^j`` (and ``Pf F`` in even orthogonal types) of degree <= max_degree."""
    basics = []
    for j in range(1, max_degree + 1):
        z = gelfand_generator(spec, [j])
        if z and z.degree() > 0:
            basics.append((j, z))
    if spec.is_orthogonal and spec.N % 2 == 0 and spec.n <= max_degree:
        basics.append((spec.n, pfaffian(spec)))
    out = [(0, UElement.scalar(spec, 1))]
    for deg, z in basics:
        grown = []
        for d, x in out:
            k = 1
            while d + k * deg <= max_degree:
                grown.append((d + k * deg, x * z ** k))
                k += 1
        out.extend(grown)
    return [x for _, x in out if x]


def transpose_powers(spec: LieAlgebraSpec, r: int) -> CheckReport:
    """``(F^r)' - (-1)^r F^r`` is a central combination of ``F^q``, ``q < r``."""

    def body():
        Fr = generator_power_at(spec, 0, r)
        target = tensor_vector(Fr.transpose_prime(0) - Fr * (-1) ** r)
        cands = []
        for q in range(r):
            Fq = generator_power_at(spec, 0, q)
            for z in central_monomials(spec, r - q):
                c = Fq * z
                if c:
                    cands.append(tensor_vector(c))
        sol = solve_in_span(target, cands)
        return None if sol.solvable else "not in the central span of lower powers"

    return run_check(f"identity.transpose-powers[{spec.name},r={r}]", body)


def antisym_phi_chain(spec: LieAlgebraSpec, m: int, r: int) -> CheckReport:
    """``A^(m) Phi_12..Phi_1r`` against the ``(1 + Q_23)(1 + Q_45)...`` form."""

    def body():
        labels = tuple(range(1, m + 1))
        A = antisymmetrizer(spec, m)
        lhs = A * _prod(spec, [Phi(spec, 1, b) for b in range(2, r + 1)], labels)
        one = identity(spec, labels)
        if r % 2:
            rhs = A * _prod(spec, [one + Q(spec, a, a + 1) for a in range(2, r, 2)], labels)
        else:
            fac = [one + Q(spec, a, a + 1) for a in range(2, r - 1, 2)] + [one + Q(spec, 1, r)]
            rhs = -(A * _prod(spec, fac, labels))
        return _diff(lhs, rhs)

    return run_check(f"identity.antisym-Phi-chain[{spec.name},m={m},r={r}]", body)


def brauer_partial_trace(spec: LieAlgebraSpec, m: int) -> CheckReport:
    """``tr_m gamma_m S^(m) = ±((omega + m - 2)/m) gamma_{m-1} S^(m-1)``, and ``S^(m)`` idempotent."""

    def body():
        w = spec.omega
        S = brauer_symmetrizer(spec, m)
        if S * S != S:
            return "S^(m) is not idempotent"
        lhs = (S * gamma(m, w)).trace((m,))
        sign = -1 if spec.is_symplectic else 1
        rhs = brauer_symmetrizer(spec, m - 1) * (gamma(m - 1, w) * Fraction(w + m - 2, m) * sign)
        return _diff(lhs, rhs)

    return run_check(f"identity.brauer-partial-trace[{spec.name},m={m}]", body)


def symplectic_forms_agree(spec: LieAlgebraSpec, mu: ShiftMatrix, m: int, k: int) -> CheckReport:
    """Brauer form and antisymmetrizer form of ``phi^(k)_m`` coincide (symplectic, m <= n)."""
    return run_check(
        f"identity.symplectic-forms-agree[{spec.name},m={m},k={k}]",
        lambda: (lambda a, b: None if a == b else f"difference {a - b}")(phi(spec, m, k, mu), phi_brauer(spec, m, k, mu)),
    )


# -- quasi-derivation identities ------------------------------------------------------

def ql_matrix(spec: LieAlgebraSpec) -> CheckReport:
    """``D_1 E_2 = P_12`` (gl_N) and ``D_1 F_2 = Phi_12`` otherwise."""

    def body():
        lhs = apply_D(embed_generator_matrix(spec, 2), 1)
        rhs = P(spec, 1, 2) if spec.family == GL else Phi(spec, 1, 2)
        return _diff(lhs, rhs)

    return run_check(f"identity.ql-matrix[{spec.name}]", body)


def d_of_e_powers(spec: LieAlgebraSpec, p: int) -> CheckReport:
    """``D_0 E_1^p`` lies in the span of ``E_0^k E_1^l`` and ``E_0^k E_1^l P_01``, ``k + l <= p - 1``."""

    def body():
        target = tensor_vector(apply_D(generator_power_at(spec, 1, p), 0), (0, 1))
        P01 = P(spec, 0, 1)
        cands = []
        for k in range(p):
            for l in range(p - k):
                base = generator_power_at(spec, 0, k) * generator_power_at(spec, 1, l)
                cands.append(tensor_vector(base, (0, 1)))
                cands.append(tensor_vector(base * P01, (0, 1)))
        sol = solve_in_span(target, cands)
        return None if sol.solvable else "not in the span"

    return run_check(f"identity.D-of-E-powers[{spec.name},p={p}]", body)


def d_of_f_powers(spec: LieAlgebraSpec, p: int) -> CheckReport:
    """``D_0 F_1^p`` is a central combination of ``F_0^k F_1^l``, ``F_0^k F_1^l P_01``, ``F_0^k Q_01 F_0^l``."""

    def body():
        target = tensor_vector(apply_D(generator_power_at(spec, 1, p), 0), (0, 1))
        P01, Q01 = P(spec, 0, 1), Q(spec, 0, 1)
        cands = []
        for k in range(p):
            for l in range(p - k):
                F0k = generator_power_at(spec, 0, k)
                shapes = [
                    F0k * generator_power_at(spec, 1, l),
                    F0k * generator_power_at(spec, 1, l) * P01,
                    F0k * Q01 * generator_power_at(spec, 0, l),
                ]
                for z in central_monomials(spec, p - 1 - k - l):
                    for base in shapes:
                        c = base * z
                        if c:
                            cands.append(tensor_vector(c, (0, 1)))
        sol = solve_in_span(target, cands)
        return None if sol.solvable else "not in the span"

    return run_check(f"identity.D-of-F-powers[{spec.name},p={p}]", body)


def _mu_slot(mu, label):
    return matrix(mu.spec, label, mu.as_dict())


def t_derivative_trace(mu: ShiftMatrix, z: UElement, p: int, tag: str) -> CheckReport:
    """``tr_1 mu_1 [D_1 T_i, D_1 D_mu^p z] = 0`` for all ``i``."""
    spec = mu.spec

    def body():
        x = d_mu_iterate(mu, z, p)
        Dx = apply_D(x, 1)
        m1 = _mu_slot(mu, 1)
        for i in range(1, spec.N + 1):
            DT = apply_D(t_element(spec, mu, i), 1)
            val = (m1 * (DT * Dx - Dx * DT)).trace()
            if val:
                return f"i={i}: {val}"
        return None

    return run_check(f"identity.T-derivative-trace[{spec.name},{tag},p={p}]", body)


def double_derivative_trace(mu: ShiftMatrix, z: UElement, p: int, tag: str) -> CheckReport:
    """``tr_{0,1} mu_0 mu_1 [D_0 D_1 T_i, D_0 D_1 x] = 0`` with ``x = D_mu^p z``; also ``D_0 D_1 = D_1 D_0``."""
    spec = mu.spec

    def body():
        x = d_mu_iterate(mu, z, p)
        DDx = apply_D(apply_D(x, 1), 0)
        if DDx != apply_D(apply_D(x, 0), 1):
            return "D_0 D_1 x != D_1 D_0 x"
        mm = _mu_slot(mu, 0) * _mu_slot(mu, 1)
        for i in range(1, spec.N + 1):
            DDT = apply_D(apply_D(t_element(spec, mu, i), 1), 0)
            val = (mm * (DDT * DDx - DDx * DDT)).trace()
            if val:
                return f"i={i}: {val}"
        return None

    return run_check(f"identity.double-derivative-trace[{spec.name},{tag},p={p}]", body)


def hat_relation(f: UElement, tag: str) -> CheckReport:
    """``hat-d_ij f = -omega(d_ji omega(f))`` with ``omega(E_kl) = -E_lk``."""
    spec = f.spec

    def body():
        for i in range(1, spec.N + 1):
            for j in range(1, spec.N + 1):
                a = quasi_derive(spec, i, j, f, "hat")
                b = hat_via_omega(f, i, j)
                if a != b:
                    return f"({i},{j}): {a - b}"
        return None

    return run_check(f"identity.hat-relation[{spec.name},{tag}]", body)
