"""Named check suites for the CLI and the test-suite.

A suite is an ordered list of zero-argument callables, each producing one
:class:`CheckReport`.  Building the list is cheap; the work happens when a
callable is invoked, so callers can stream reports as they finish.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import partial

from . import identities as I
from .checks import (
    CheckReport,
    bcd_recurrence,
    check_bcd_single_step,
    check_theorem_A,
    classical_shift_commutativity,
    counterexample_amu_not_preserved,
    counterexample_bcd_shift,
    is_central,
    pairwise_commuting,
    pfaffian_matrix_identity,
    pfaffian_shift_proportional,
    run_check,
    symbol_matches_shift,
    type_a_recurrence,
)
from .generators import amu_generating_family, gelfand_generator, pfaffian, phi, psi
from .lie import GL, O_CANON, O_SPLIT, SP_SPLIT, build_spec
from .quasi import HAT, ShiftMatrix, leibniz_consistency_check
from .tensor import generator_power

SUITES = ("identities", "theorems", "counterexamples")

# CLI family names -> internal family tags
FAMILY_NAMES = {"glN": GL, "oN": O_SPLIT, "spN": SP_SPLIT, "o2n-canonical": O_CANON}

# (family, N) instances visited by each suite, before --max-n filtering
IDENTITY_SPECS = [(GL, 2), (GL, 3), (GL, 4), (GL, 5), (O_SPLIT, 4), (O_SPLIT, 5), (SP_SPLIT, 4), (O_CANON, 4)]
THEOREM_SPECS = [(GL, 2), (GL, 3), (O_SPLIT, 4), (O_SPLIT, 5), (SP_SPLIT, 4), (O_CANON, 2), (O_CANON, 4), (O_CANON, 6)]


def leibniz_report(spec, trials: int, seed: int = 0, kind: str = "standard") -> CheckReport:
    def body():
        rep = leibniz_consistency_check(spec, trials, seed=seed, kind=kind)
        if rep.ok:
            return None
        f, g, key, diff = rep.violations[0]
        return f"{len(rep.violations)} violations; first f={f}, g={g}, entry {key}: {diff}"

    tag = "" if kind == "standard" else f",{kind}"
    return run_check(f"quasi.leibniz-consistency[{spec.name},trials={trials}{tag}]", body)


def _random_matrix(spec, rng):
    return {(i, j): Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for i in range(1, spec.N + 1) for j in range(1, spec.N + 1)}


def _skew_mu(spec, rng):
    """A random mu with ``mu' = -mu`` (the symmetry the form types require)."""
    ent = _random_matrix(spec, rng)
    out = {}
    for (i, j), v in ent.items():
        a, b = spec.conj(j), spec.conj(i)
        out[i, j] = (v - spec.theta(i, j) * ent[a, b]) / 2
    mu = ShiftMatrix(spec, out)
    mu.validate()
    return mu


# -- identities -----------------------------------------------------------------------

def _gl_identities(spec, seed):
    N = spec.N
    rng = random.Random(seed)
    mu = ShiftMatrix.generic(spec)
    out = [partial(I.antisym_partial_trace, spec, m, s) for m in range(1, N + 1) for s in range(1, m + 1)]
    if N == 2 or N == 3:
        out += [partial(I.power_commutator, spec, r, s) for r in range(1, 6) for s in range(1, 6) if r + s <= 6]
        out += [
            partial(I.partial_trace_P, spec, generator_power(spec, 2), "E^2"),
            partial(I.partial_trace_P, spec, _random_matrix(spec, rng), f"random,seed={seed}"),
            partial(I.ql_matrix, spec),
        ]
        out += [partial(I.trace_conjugation, spec, m, k, mu) for m in (2, 3) for k in range(m + 1)]
        out += [partial(I.d_of_e_powers, spec, p) for p in range(1, 5)]
        out += [partial(I.hat_relation, phi(spec, N, 0) * gelfand_generator(spec, [1]), "phi_N*trE")]
    out += [partial(I.antisym_absorbs_P, spec, m) for m in range(max(1, N - 1), min(N, 4) + 1) if N <= 4]
    if N == 3:
        out += [partial(I.reduced_trace, spec, mu, r, s) for r in range(1, 4) for s in range(1, 4) if r + s <= 4]
        zs = [("trE2", gelfand_generator(spec, [2])), ("trE3", gelfand_generator(spec, [3])), ("phi2", phi(spec, 2))]
        for tag, z in zs:
            for p in range(3):
                out.append(partial(I.t_derivative_trace, mu, z, p, tag))
                out.append(partial(I.double_derivative_trace, mu, z, p, tag))
    return out


def _form_identities(spec, seed):
    rng = random.Random(seed)
    out = [partial(I.pq_sign, spec), partial(I.q_exchange, spec), partial(I.ql_matrix, spec)]
    out += [partial(I.partial_trace_P, spec, generator_power(spec, 2), "F^2")]
    for q in range(1, 5):
        out += [partial(I.q_sandwich, spec, q), partial(I.q_transpose, spec, q)]
    out += [partial(I.p_phi_chain, spec, s) for s in range(2, 5)]
    out += [partial(I.trace_mu_q, spec, ShiftMatrix.generic(spec), ",generic")]
    out += [partial(I.trace_mu_q, spec, _skew_mu(spec, rng), f",random,seed={seed}")]
    out += [partial(I.transpose_powers, spec, r) for r in range(1, 5)]
    out += [partial(I.d_of_f_powers, spec, p) for p in range(1, 5)]
    chain_m = range(2, 6 if spec.N >= 5 else 5)
    out += [partial(I.antisym_phi_chain, spec, m, r) for m in chain_m for r in range(1, m + 1)]
    m_max = min(spec.N, 4) if spec.is_orthogonal else spec.n
    out += [partial(I.brauer_partial_trace, spec, m) for m in range(2, m_max + 1)]
    if spec.is_symplectic:
        mu = ShiftMatrix.generic(spec)
        out += [partial(I.symplectic_forms_agree, spec, mu, m, k) for m in range(1, spec.n + 1) for k in range(m + 1)]
    return out


def identity_suite(specs, seed: int = 0) -> list:
    out = []
    for spec in specs:
        out += _gl_identities(spec, seed) if spec.family == GL else _form_identities(spec, seed)
    return out


def run_identity_suite(specs, seed: int = 0) -> list[CheckReport]:
    return [c() for c in identity_suite(specs, seed)]


# -- theorems -------------------------------------------------------------------------

def _centrality(spec):
    out = []
    if spec.family == O_CANON:
        out.append(partial(is_central, pfaffian(spec), f"center.pfaffian[{spec.name}]"))
        return out
    ms = range(1, spec.N + 1) if spec.family == GL else range(2, spec.N + 1, 2)
    for m in ms:
        out.append(partial(lambda s, m: is_central(phi(s, m, 0), f"center.phi[{s.name},m={m}]"), spec, m))
    if spec.family == O_SPLIT and spec.N % 2 == 0:
        out.append(partial(is_central, pfaffian(spec), f"center.pfaffian[{spec.name}]"))
    return out


def _theorems_gl(spec, trials, seed):
    N = spec.N
    mu = ShiftMatrix.generic(spec)
    out = [partial(leibniz_report, spec, trials, seed), partial(leibniz_report, spec, trials, seed, HAT)]
    out += _centrality(spec)
    zs = [("trE2", gelfand_generator(spec, [2])), ("trE3", gelfand_generator(spec, [3])), (f"phi{N}", phi(spec, N, 0))]
    if N == 2:
        zs.append(("psi2", psi(spec, 2, 0)))
    for tag, z in zs:
        out.append(partial(check_theorem_A, mu, z, 3, f"theorem.shift-iterates-in-amu[{spec.name},{tag},p<=3]"))
    for m in range(1, N + 1):
        for k in range(m):
            out.append(partial(type_a_recurrence, spec, mu, m, k, "phi"))
            out.append(partial(type_a_recurrence, spec, mu, m, k, "psi"))
    out.append(lambda: _family_check(spec, mu))
    if N == 3:
        out.append(partial(classical_shift_commutativity, spec, mu, (2, 3)))
        out += [partial(symbol_matches_shift, spec, mu, m) for m in range(1, N + 1)]
    return out


def _family_check(spec, mu):
    fam = amu_generating_family(spec, mu)
    return pairwise_commuting(fam, f"family.pairwise-commuting[{spec.name}]")


def _theorems_form(spec, trials, seed):
    out = [partial(leibniz_report, spec, trials, seed)]
    out += _centrality(spec)
    if spec.family == O_CANON:
        mu = ShiftMatrix.generic(spec)
        out.append(partial(pfaffian_matrix_identity, spec, 1, spec.n - 1))
        out.append(partial(pfaffian_shift_proportional, mu, spec.n))
        return out
    mu = ShiftMatrix.generic(spec)
    zs = [("trF2", gelfand_generator(spec, [2])), ("phi2", phi(spec, 2, 0))]
    if spec.is_orthogonal and spec.N % 2 == 0:
        zs.append(("Pf", pfaffian(spec)))
    for tag, z in zs:
        out.append(partial(check_bcd_single_step, mu, z, f"theorem.single-shift-in-amu[{spec.name},{tag}]"))
    for m in range(2, min(spec.N, 4) + 1, 2):
        for k in range(m):
            out.append(partial(bcd_recurrence, spec, mu, m, k))
    out.append(lambda: _family_check(spec, mu))
    return out


def theorem_suite(specs, trials: int = 200, seed: int = 0) -> list:
    out = []
    for spec in specs:
        out += _theorems_gl(spec, trials, seed) if spec.family == GL else _theorems_form(spec, trials, seed)
    return out


# -- counterexamples -----------------------------------------------------------------------

def counterexample_suite(families, max_n: int) -> list:
    out = []
    if GL in families and max_n >= 3:
        out.append(partial(counterexample_amu_not_preserved, 3))
    if O_SPLIT in families and max_n >= 5:
        out.append(partial(counterexample_bcd_shift, 5, True))
    return out


# -- selection ----------------------------------------------------------------------------

def select(suite: str = "all", families=None, max_n: int = 5, trials: int = 200, seed: int = 0) -> list:
    """Callables for the requested suite, restricted to the given families and ``N <= max_n``."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    families = set(families or FAMILY_NAMES.values())

    def specs(table):
        return [build_spec(f, N) for f, N in table if f in families and N <= max_n]

    out = []
    if suite in ("all", "identities"):
        out += identity_suite(specs(IDENTITY_SPECS), seed)
    if suite in ("all", "theorems"):
        out += theorem_suite(specs(THEOREM_SPECS), trials, seed)
    if suite in ("all", "counterexamples"):
        out += counterexample_suite(families, max_n)
    return out
