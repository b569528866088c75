import json

import pytest

from qshift import identities as I
from qshift.checks import (
    CheckReport,
    amu_membership_criterion,
    check_bcd_single_step,
    check_theorem_A,
    counterexample_amu_not_preserved,
    counterexample_bcd_shift,
    is_central,
    pairwise_commuting,
    pfaffian_matrix_identity,
    remark_element,
    trace_mu_power,
)
from qshift.generators import GeneratorFamily, amu_generating_family, gelfand_generator, pfaffian, phi, psi
from qshift.lie import GL, O_CANON, O_SPLIT, build_spec
from qshift.quasi import ShiftMatrix
from qshift.suites import run_identity_suite
from qshift.uea import gen, one


def test_report_schema():
    rep = CheckReport("x", "fail", "w", 3)
    assert json.loads(rep.to_json()) == {"check": "x", "status": "fail", "witness": "w", "ms": 3}


def test_is_central_examples(gl2):
    assert is_central(one(gl2)).passed
    assert is_central(gelfand_generator(gl2, [2])).passed
    rep = is_central(gen(gl2, 1, 2))
    assert not rep.passed and rep.witness


def test_membership_examples(gl3):
    mu = ShiftMatrix.generic(gl3)
    assert amu_membership_criterion(mu, gelfand_generator(gl3, [3])).passed
    assert amu_membership_criterion(mu, trace_mu_power(gl3, mu, 2)).passed
    rep = amu_membership_criterion(mu, trace_mu_power(gl3, mu, 2, 2))
    assert not rep.passed and "T_" in rep.witness
    with pytest.raises(ValueError):
        amu_membership_criterion(ShiftMatrix(gl3, {(1, 1): 1, (2, 2): 1, (3, 3): 3}), one(gl3))


def test_pairwise_examples(gl2, o4):
    mu = ShiftMatrix.generic(gl2)
    single = GeneratorFamily(gl2, mu)
    single.add({"kind": "phi", "m": 1, "k_or_p": 0}, phi(gl2, 1))
    assert pairwise_commuting(single).passed
    assert pairwise_commuting(amu_generating_family(gl2, mu)).passed
    assert pairwise_commuting(amu_generating_family(o4, ShiftMatrix.generic(o4))).passed
    bad = GeneratorFamily(gl2, mu)
    bad.add({"kind": "x", "m": 1, "k_or_p": 0}, gen(gl2, 1, 2))
    bad.add({"kind": "x", "m": 2, "k_or_p": 0}, gen(gl2, 2, 1))
    assert not pairwise_commuting(bad).passed


def test_theorem_A_examples(gl2, gl3):
    mu3 = ShiftMatrix.generic(gl3)
    assert check_theorem_A(mu3, gelfand_generator(gl3, [2]), 0).passed
    assert check_theorem_A(mu3, gelfand_generator(gl3, [3]), 3).passed
    assert check_theorem_A(ShiftMatrix.generic(gl2), psi(gl2, 2), 1).passed
    with pytest.raises(ValueError):
        check_theorem_A(ShiftMatrix.generic(build_spec(O_SPLIT, 4)), one(build_spec(O_SPLIT, 4)), 1)


def test_bcd_single_step_examples(o4, o5, sp4):
    assert check_bcd_single_step(ShiftMatrix.generic(o5), gelfand_generator(o5, [2])).passed
    assert check_bcd_single_step(ShiftMatrix.generic(sp4), phi(sp4, 2)).passed
    assert check_bcd_single_step(ShiftMatrix.generic(o4), pfaffian(o4)).passed


def test_second_shift_leaves_amu_in_o5():
    rep = counterexample_bcd_shift(5)
    assert rep.passed, rep.witness
    assert rep.info["commutator_nonzero"] and rep.info["trace_relation"]
    assert rep.info["mu2_coefficient_nonzero"] and rep.info["reduction_32"]
    assert bool(remark_element(build_spec(O_SPLIT, 5)))


def test_second_shift_o4_informational():
    rep = counterexample_bcd_shift(4, assert_nonzero=False)
    assert rep.passed
    assert "commutator_nonzero" in rep.info


def test_amu_not_preserved_gl3():
    rep = counterexample_amu_not_preserved(3)
    assert rep.passed, rep.witness
    assert abs(rep.info["coefficient"]) == 3


def test_no_gl2_analogue(gl2):
    # mu^2 = 3 mu - 2 for mu = diag(1, 2), so tr mu^2 E^2 is already in A_mu
    mu = ShiftMatrix.generic(gl2)
    y = trace_mu_power(gl2, mu, 2, 2)
    assert y == trace_mu_power(gl2, mu, 2) * 3 - gelfand_generator(gl2, [2]) * 2
    rep = counterexample_amu_not_preserved(2)
    assert not rep.passed and "passes the commutant criterion" in rep.witness


def test_identity_suite_examples(gl2, o4):
    assert I.power_commutator(gl2, 1, 1).passed
    assert I.d_of_e_powers(gl2, 2).passed
    assert I.antisym_phi_chain(o4, 3, 3).passed


def test_pfaffian_identity_corrected_form():
    for N in (2, 4, 6):
        spec = build_spec(O_CANON, N)
        assert pfaffian_matrix_identity(spec, 1, spec.n - 1).passed


def test_failure_carries_witness(gl2):
    rep = is_central(gen(gl2, 1, 1))
    assert rep.status == "fail" and rep.witness
    rep = is_central(one(gl2))
    assert rep.status == "pass" and rep.witness is None


def test_reports_are_reproducible():
    specs = [build_spec(GL, 2), build_spec(O_SPLIT, 4)]
    a = [(r.check, r.status, r.witness) for r in run_identity_suite(specs, seed=3)]
    b = [(r.check, r.status, r.witness) for r in run_identity_suite(specs, seed=3)]
    assert a == b
    assert len({c for c, _, _ in a}) == len(a)



@pytest.mark.slow
def test_theorem_suite_all_pass():
    from qshift.suites import select

    bad = [r for r in (c() for c in select("theorems", max_n=6, trials=100)) if not r.passed]
    assert not bad, [(r.check, r.witness) for r in bad]


def test_suite_filtering():
    from qshift.suites import select

    assert select("counterexamples", ["glN-missing"], 5) == []
    assert len(select("counterexamples", None, 4)) == 1
    with pytest.raises(ValueError):
        select("nonsense")
