import pytest

import oracles
from metad2.exactlin import IntMatrix, sylvester_system
from metad2.fixtures import FixtureSet
from metad2.metacyclic import P7, RingElem, build_pi
from metad2.m7pipeline import (
    ROWS,
    STAGES,
    M7Pipeline,
    build_pibar_matrix,
    compute_kernel_K,
    e_elements,
    extension_systems,
    k_invariant_verdict_for,
    parse_mutation,
    pibar_by_reduction,
    eta_generators,
    verify_e_basis,
    verify_eta_elements,
    verify_h_conjugation,
    verify_M7,
    verify_pi_module,
)
from metad2.modrep import cyclic_rep


@pytest.fixture(scope="module")
def pipeline():
    pl = M7Pipeline(rebase_trials=3)
    pl.report_full = pl.run()
    return pl


def _in_column_lattice(M: IntMatrix, c: IntMatrix) -> bool:
    basis = oracles.gcd_echelon(M.T.tolist(), M.rows)
    return oracles.in_row_lattice(basis, list(c.col(0)))


def test_full_run_passes(pipeline):
    rep = pipeline.report_full
    assert rep.ok, rep.first_failure()
    assert rep["m7"].status == "pass"
    assert rep["verdict.rebase"].status == "pass"


def test_stage_reports():
    assert verify_pi_module().ok
    assert verify_e_basis().ok
    assert verify_h_conjugation().ok
    assert verify_eta_elements().ok


def test_kernel_rank():
    assert compute_kernel_K().rank == 36


def test_pi_identities():
    x, y = RingElem.x(P7), RingElem.y(P7)
    pi = build_pi()
    v = pi * (1 + x ** 2)
    assert v * (1 + x) * (1 + x ** 4) == pi
    assert v * y == -(v * (1 + x))


def test_e_elements_count():
    assert len(e_elements()) == 18


def test_eta_generators():
    x, y = RingElem.x(P7), RingElem.y(P7)
    eta = eta_generators()
    assert sorted(eta) == list(ROWS)
    pi = build_pi()
    assert (pi * eta[4]).is_zero() and (pi * eta[6]).is_zero()
    assert eta[4] * y == eta[4] * (1 + x)
    assert eta[6] * y == eta[6]


def test_pibar_two_routes_match_fixture():
    fixture = FixtureSet(7)["pibar"]
    assert pibar_by_reduction() == fixture
    assert build_pibar_matrix() == fixture


def test_verdicts_match_lattice_oracle(pipeline):
    sigma = cyclic_rep(P7)
    for k in ROWS:
        b = pipeline.data["blocks"][k]
        theta = pipeline.theta(k)
        joint, x_only = extension_systems(b.C, b.D, theta.X, theta.Y, sigma.Y)
        v = pipeline.data["verdicts"][k]
        for blocks, solvable in ((joint, v.solvable), (x_only, v.x_solvable)):
            M, c = sylvester_system(blocks)
            assert _in_column_lattice(M, c) == solvable
        assert not v.solvable and not v.x_solvable and v.certificate_verified
        assert v.nontrivial


def test_zeroing_any_C_makes_x_equation_solvable(pipeline):
    sigma = cyclic_rep(P7)
    for k in ROWS:
        b = pipeline.data["blocks"][k]
        zero = IntMatrix.zeros(6, 6)
        v = k_invariant_verdict_for(k, zero, b.D, pipeline.theta(k), sigma)
        assert v.x_solvable and v.certificate_verified
        both = k_invariant_verdict_for(k, zero, zero, pipeline.theta(k), sigma)
        assert both.solvable and both.x_solvable


def test_mutation_C4_fails_at_row_4():
    rep = verify_M7(mutate={"C4": 0}, rebase_trials=0)
    assert not rep.ok
    assert rep.first_failure().id == "verdict.4.x_eq"
    assert rep["verdict.1.x_eq"].status == "pass"


def test_mutation_C_and_D_flips_joint_verdict():
    rep = verify_M7(mutate={"C4": 0, "D4": 0}, rebase_trials=0)
    assert rep["verdict.4.joint"].status == "fail"


def test_corrupted_h_fails_and_halts():
    h = FixtureSet(7)["h"].tolist()
    h[0][0] += 1
    fx = FixtureSet(7, overrides={"h": IntMatrix(h)})
    rep = M7Pipeline(fixtures=fx, rebase_trials=0).run()
    assert rep.first_failure().id.startswith("h.")
    assert rep["m7"].status == "fail"
    assert any(c.status == "skip" for c in rep.checks)


def test_x_equation_only_run():
    rep = verify_M7(x_equation_only=True, rebase_trials=0)
    assert rep.ok
    assert rep.get("verdict.1.joint") is None
    assert rep["verdict.1.x_eq"].status == "pass"


def test_basis_perm_mismatch_is_warning():
    perm = list(range(24))[::-1]
    rep = verify_M7(basis_perm=perm, rebase_trials=0)
    assert rep.ok
    assert rep["pibar.fixture"].status == "warn"


def test_parse_mutation():
    assert parse_mutation("C4=0") == ("C4", 0)
    for bad in ("C4", "C4=1", "=0", "C4=x"):
        with pytest.raises(ValueError):
            parse_mutation(bad)


def test_unknown_mutation_target():
    with pytest.raises(ValueError):
        M7Pipeline(mutate={"C2": 0})
    with pytest.raises(ValueError):
        M7Pipeline(mutate={"nope": 0})


def test_stage_order():
    assert STAGES[0] == "pi" and STAGES[-1] == "verdicts"
