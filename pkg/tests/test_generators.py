import json
from fractions import Fraction

import pytest

from qshift.checks import is_central
from qshift.generators import (
    GeneratorFamily,
    amu_generating_family,
    check_generic,
    gelfand_generator,
    pf_shift_coeffs,
    pfaffian,
    phi,
    phi_brauer,
    psi,
    t_element,
)
from qshift.lie import GL, O_CANON, O_SPLIT, SP_SPLIT, build_spec
from qshift.quasi import ShiftMatrix, d_mu
from qshift.uea import UElement, commutator, gen, parse_element


def test_gelfand_examples(gl2):
    assert gelfand_generator(gl2, []) == 1
    assert gelfand_generator(gl2, [1]) == gen(gl2, 1, 1) + gen(gl2, 2, 2)
    want = parse_element(gl2, "E[1,1]^2 + E[2,2]^2 + E[1,2]E[2,1] + E[2,1]E[1,2]")
    assert gelfand_generator(gl2, [2]) == want
    assert gelfand_generator(gl2, [1, 2]) == gelfand_generator(gl2, [1]) * want
    with pytest.raises(ValueError):
        gelfand_generator(gl2, [0])


def test_phi_psi_examples(gl2):
    mu = ShiftMatrix(gl2, {(1, 1): 1, (2, 2): 2})
    trE = gelfand_generator(gl2, [1])
    trmuE = gen(gl2, 1, 1) + gen(gl2, 2, 2) * 2
    assert phi(gl2, 1, 0) == trE
    assert phi(gl2, 2, 1, mu) == (trE * 3 - trmuE) * Fraction(1, 2)
    assert psi(gl2, 1, 0) == trE
    assert psi(gl2, 1, 1, mu) == 3
    assert psi(gl2, 2, 1, mu) == (trE * 3 + trmuE) * Fraction(1, 2)
    # k = m leaves a scalar: tr A^(2) mu_1 mu_2 = (tr(mu)^2 - tr(mu^2)) / 2 = 2
    assert phi(gl2, 2, 2, mu) == 2


def test_phi_errors(gl2, o4):
    with pytest.raises(ValueError):
        phi(gl2, 3)
    with pytest.raises(ValueError):
        phi(gl2, 2, 3, ShiftMatrix.generic(gl2))
    with pytest.raises(ValueError):
        phi(gl2, 2, 1)
    with pytest.raises(ValueError):
        psi(o4, 2)


@pytest.mark.parametrize("family,N", [(GL, 2), (GL, 3), (GL, 4), (O_SPLIT, 4), (O_SPLIT, 5), (SP_SPLIT, 4), (O_CANON, 4)])
def test_centrality(family, N):
    spec = build_spec(family, N)
    ms = range(1, N + 1) if family == GL else range(2, N + 1, 2)
    for m in ms:
        assert is_central(phi(spec, m)).passed, m
    if family == GL:
        for m in (1, 2, 3):
            assert is_central(psi(spec, m)).passed
    for powers in ([2], [3], [1, 2]):
        assert is_central(gelfand_generator(spec, powers)).passed


def test_odd_phi_vanish_in_orthogonal(o5):
    assert not phi(o5, 3)
    assert not phi(o5, 1)


def test_symplectic_forms_agree(sp4):
    mu = ShiftMatrix.generic(sp4)
    for m in (1, 2):
        for k in range(m + 1):
            assert phi(sp4, m, k, mu) == phi_brauer(sp4, m, k, mu)


def test_pfaffian_examples():
    c2, c4 = build_spec(O_CANON, 2), build_spec(O_CANON, 4)
    assert pfaffian(c2) == gen(c2, 1, 2)
    assert pfaffian(c4) == parse_element(c4, "F[1,2]F[3,4] - F[1,3]F[2,4] + F[1,4]F[2,3]")
    o2 = build_spec(O_SPLIT, 2)
    assert pfaffian(o2) == gen(o2, 1, 1)
    with pytest.raises(ValueError):
        pfaffian(build_spec(O_SPLIT, 5))
    with pytest.raises(ValueError):
        pfaffian(build_spec(SP_SPLIT, 4))


@pytest.mark.parametrize("family,N", [(O_CANON, 4), (O_CANON, 6), (O_SPLIT, 4), (O_SPLIT, 6)])
def test_pfaffian_central(family, N):
    assert is_central(pfaffian(build_spec(family, N))).passed


def test_pf_shift_coeffs_examples():
    c2, c4 = build_spec(O_CANON, 2), build_spec(O_CANON, 4)
    mu = ShiftMatrix(c2, {(1, 2): 3, (2, 1): -3})
    assert pf_shift_coeffs(c2, mu) == [gen(c2, 1, 2), UElement.scalar(c2, 3)]
    zero = ShiftMatrix(c4, {})
    coeffs = pf_shift_coeffs(c4, zero)
    assert coeffs[0] == pfaffian(c4) and not coeffs[1] and not coeffs[2]
    mu = ShiftMatrix(c4, {(1, 2): 1, (2, 1): -1})
    assert pf_shift_coeffs(c4, mu)[1] == gen(c4, 3, 4)
    generic = ShiftMatrix.generic(c4)
    assert pf_shift_coeffs(c4, generic)[2] == 2  # Pf of diag blocks 1, 2


def test_t_elements(gl2, o5):
    mu = ShiftMatrix(gl2, {(1, 1): 1, (2, 2): 2})
    assert t_element(gl2, mu, 1) == -(gen(gl2, 1, 2) * gen(gl2, 2, 1))
    for spec in (gl2, o5):
        mu = ShiftMatrix.generic(spec)
        for i in range(1, spec.n + 1 if spec.family != GL else spec.N + 1):
            T = t_element(spec, mu, i)
            assert not commutator(gen(spec, i, i), T)
            assert d_mu(mu, T).is_scalar()


def test_genericity_rejected(gl3, c4):
    with pytest.raises(ValueError):
        check_generic(ShiftMatrix(gl3, {(1, 1): 1, (2, 2): 1, (3, 3): 2}))
    with pytest.raises(ValueError):
        check_generic(ShiftMatrix(gl3, {(1, 1): 1, (1, 2): 1, (2, 2): 2, (3, 3): 3}))
    with pytest.raises(ValueError):
        check_generic(ShiftMatrix.generic(c4))
    o4 = build_spec(O_SPLIT, 4)
    with pytest.raises(ValueError):
        check_generic(ShiftMatrix(o4, {(1, 1): 1, (4, 4): -1}))


def test_family_shapes(gl2, o4):
    fam = amu_generating_family(gl2, ShiftMatrix.generic(gl2))
    assert [(l["base"], l["m"], l["k_or_p"]) for l, _ in fam.members] == [("phi", 1, 0), ("phi", 2, 0), ("phi", 2, 1)]
    fam = amu_generating_family(o4, ShiftMatrix.generic(o4))
    assert [(l["base"], l["m"], l["k_or_p"]) for l, _ in fam.members] == [("phi", 2, 0), ("phi", 2, 1), ("pi", 2, 0), ("pi", 2, 1)]
    sp2 = build_spec(SP_SPLIT, 2)
    fam = amu_generating_family(sp2, ShiftMatrix.generic(sp2))
    assert [(l["m"], l["k_or_p"]) for l, _ in fam.members] == [(2, 0), (2, 1)]
    data = json.loads(fam.to_json())
    assert set(data[0]) == {"label", "element"}


def test_family_labels_unique(gl2):
    fam = GeneratorFamily(gl2, ShiftMatrix.generic(gl2))
    fam.add({"kind": "phi", "m": 1, "k_or_p": 0}, phi(gl2, 1))
    with pytest.raises(ValueError):
        fam.add({"kind": "phi", "m": 1, "k_or_p": 0}, phi(gl2, 1))
    with pytest.raises(ValueError):
        fam.add({"kind": "phi", "m": 2, "k_or_p": 0}, phi(build_spec(GL, 3), 1))
