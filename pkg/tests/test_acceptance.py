"""Acceptance criteria 1-13, one test each.

Every test prints a single "criterion N: PASS|FAIL" line with its runtime
(visible under ``pytest -v``), and asserts the stated time bound where
one is given.
"""

import random
import time
from contextlib import contextmanager

import oracles
from metad2 import trimat
from metad2.exactlin import (
    IntMatrix,
    det,
    elementary_divisors,
    hnf,
    kernel_basis,
    solve_right,
    unsolvability_certificate,
)
from metad2.fixtures import FixtureSet
from metad2.metacyclic import P7, RingElem, build_pi, ideal_lattice
from metad2.m7pipeline import (
    ROWS,
    M7Pipeline,
    build_pibar_matrix,
    compute_kernel_K,
    verify_e_basis,
    verify_eta_elements,
    verify_h_conjugation,
    verify_M7,
    verify_pi_module,
)
from metad2.modrep import (
    CHAR_TABLE,
    CharCertificate,
    Representation,
    check_sigma_condition,
    fullness_automorphism_check,
    is_isomorphic_to_row,
)


@contextmanager
def criterion(capsys, n, title, limit=None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        bound = f" (limit {limit:g} s)" if limit else ""
        if status == "PASS" and limit and elapsed >= limit:
            status = "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {n:2d}: {status}  {title}  [{elapsed:.2f} s{bound}]")
    if limit:
        assert elapsed < limit, f"criterion {n} took {elapsed:.2f} s, limit {limit} s"


def fresh_fixtures():
    return FixtureSet(7)


def test_criterion_01_fixture_validation(capsys):
    with criterion(capsys, 1, "lambda and theta fixtures satisfy the group relations and the norm condition", 1.0):
        fx = fresh_fixtures()
        lx, ly = fx["lambda_x"], fx["lambda_y"]
        eye = IntMatrix.identity(6)
        assert lx ** 7 == eye
        assert ly ** 6 == eye
        assert ly @ lx == lx ** 3 @ ly
        for k in range(1, 7):
            rep = Representation(P7, fx[f"theta_{k}_x"], fx[f"theta_{k}_y"])
            assert check_sigma_condition(rep)


def test_criterion_02_characteristic_certificates(capsys):
    with criterion(capsys, 2, "the six characteristic vectors satisfy their equations and generate their rows", 1.0):
        lam = trimat.lambda_fixture(7)
        vecs = fresh_fixtures()["char_vectors"]
        for k in range(1, 7):
            sign, power = CHAR_TABLE[k]
            cert = CharCertificate(k, vecs.row(k - 1), sign, power)
            lat = lam.row_lattice(k)
            assert cert.check_equation(lam.lx.entries, lam.ly.entries)
            assert lat.contains(cert.v)
            assert lat.generated_by(cert.v)


def test_criterion_03_hom_tables(capsys):
    for cached in (trimat._row_rep, trimat._maps_to_free, trimat._maps_from_free):
        cached.cache_clear()
    with criterion(capsys, 3, "hom generators I / 7I and derived orders 7 on the diagonal, 1 off it", 30.0):
        lam = trimat.lambda_fixture(7)
        eye = IntMatrix.identity(6)
        for i in range(1, 7):
            for j in range(1, 7):
                H = trimat.hom_lattice(7, i, j, lam)
                assert H.rows == 1
                assert trimat.unflatten(H.row(0), 6) == (eye if i >= j else eye * 7)
                assert trimat.hom_der_order(7, i, j, lam) == (7 if i == j else 1)


def test_criterion_04_pi_module(capsys):
    with criterion(capsys, 4, "pi identities, [pi) is the first row module, K has rank 36", 5.0):
        x, y = RingElem.x(P7), RingElem.y(P7)
        pi = build_pi()
        v = pi * (1 + x ** 2)
        assert v * (1 + x) * (1 + x ** 4) == pi
        assert v * y == -(v * (1 + x))
        assert is_isomorphic_to_row(ideal_lattice([pi]), 1)
        assert verify_pi_module().ok
        assert compute_kernel_K().rank == 36


def test_criterion_05_intersection_basis(capsys):
    with criterion(capsys, 5, "the 18 elements span the intersection and act by the block forms"):
        rep = verify_e_basis()
        assert rep.ok, rep.first_failure()
        for cid in ("e_basis.spans", "e_basis.L_x", "e_basis.L_y"):
            assert rep[cid].status == "pass"


def test_criterion_06_conjugations(capsys):
    with criterion(capsys, 6, "det h = 1, h conjugates theta_135 to L, f conjugates rho to sigma"):
        fx = fresh_fixtures()
        assert oracles.frac_det(fx["h"].tolist()) == 1
        rep = verify_h_conjugation()
        for cid in ("h.det", "h.conj_x", "h.conj_y"):
            assert rep[cid].status == "pass"
        full = M7Pipeline(rebase_trials=0)
        for s in ("pi", "kernel", "e_basis", "h", "eta", "pibar", "rho"):
            getattr(full, f"stage_{s}")()
        for cid in ("rho.f_det", "rho.f_conj"):
            assert full.report[cid].status == "pass"


def test_criterion_07_eta_certificates(capsys):
    with criterion(capsys, 7, "eta annihilation, eigen-equations and row isomorphisms"):
        rep = verify_eta_elements()
        assert rep.ok, rep.first_failure()
        for cid in ("eta.pi_eta4", "eta.pi_eta6", "eta.eta4_char", "eta.eta6_char"):
            assert rep[cid].status == "pass"
        for k in ROWS:
            assert rep[f"eta.row{k}"].status == "pass"


def test_criterion_08_pibar_matrix(capsys):
    with criterion(capsys, 8, "the 6x24 matrix matches the fixture"):
        assert build_pibar_matrix() == fresh_fixtures()["pibar"]
        rep = verify_M7(rebase_trials=0)
        assert rep["pibar.fixture"].status == "pass"
        assert rep["pibar.routes_agree"].status == "pass"


def test_criterion_09_k_invariant_verdicts(capsys):
    with criterion(capsys, 9, "no solutions for the joint system nor the x-equation, stable under 20 re-basings", 10.0):
        rep = verify_M7(rebase_trials=20, seed=0)
        assert rep.ok, rep.first_failure()
        for k in ROWS:
            assert rep[f"verdict.{k}.joint"].status == "pass"
            assert rep[f"verdict.{k}.x_eq"].status == "pass"
        assert rep["verdict.rebase"].status == "pass"
        assert rep["m7"].status == "pass"


def test_criterion_10_mutations(capsys):
    with criterion(capsys, 10, "zeroing any C(i) flips its verdict; corrupting h fails the conjugation step"):
        for k in ROWS:
            rep = verify_M7(mutate={f"C{k}": 0}, rebase_trials=0)
            assert rep.first_failure().id == f"verdict.{k}.x_eq"
        h = fresh_fixtures()["h"].tolist()
        h[3][5] += 1
        rep = M7Pipeline(fixtures=FixtureSet(7, overrides={"h": IntMatrix(h)}), rebase_trials=0).run()
        first = rep.first_failure()
        assert first is not None and first.id.startswith("h.")
        assert rep["m7"].status == "fail"


def test_criterion_11_unit_constructions(capsys):
    with criterion(capsys, 11, "Bezout units, endomorphism targets and the residue obstruction"):
        rng = random.Random(11)
        for p in (5, 7, 11):
            for _ in range(200):
                slot = rng.randint(1, p - 1)
                res = [rng.randint(1, p - 1) for _ in range(p - 2)]
                u = trimat.bezout_unit(p, slot, res)
                assert abs(det(u.entries)) == 1
                assert trimat.tri_shape_ok(p, u.entries)
                others = [k for k in range(p - 1) if k != slot - 1]
                assert [u.entries[k, k] % p for k in others] == res
        count = 0
        for a12, a22, diag in trimat.valid_aut_targets(5):
            M = trimat.unit_for_target(5, a12, a22, diag)
            assert abs(det(M)) == 1 and trimat.aut_k_map(5, M) == (a12, a22) + diag
            count += 1
        assert count == 24 * 16
        targets = list(trimat.valid_aut_targets(7))
        for a12, a22, diag in rng.sample(targets, 600):
            M = trimat.unit_for_target(7, a12, a22, diag)
            assert abs(det(M)) == 1 and trimat.aut_k_map(7, M) == (a12, a22) + diag
        admitted = [n for n in range(1, 7) if trimat.diag_residue_obstruction(7, [1, n, 1, 1, 1, 1])]
        assert admitted == [1, 6]
        for n in admitted:
            u = trimat.unit_with_diagonal(7, [1, n, 1, 1, 1, 1])
            assert u is not None and u.is_unit()


def test_criterion_12_fullness(capsys):
    from math import gcd

    with criterion(capsys, 12, "fullness automorphism check for every valid r, p in {5, 7, 11, 13}", 5.0):
        for p in (5, 7, 11, 13):
            for r in range(1, p - 1):
                if gcd(r, p - 1) == 1:
                    assert fullness_automorphism_check(p, r), (p, r)


def test_criterion_13_exactlin_property_suite(capsys):
    with criterion(capsys, 13, "1000 random HNF/SNF/kernel/solve instances against independent oracles"):
        rng = random.Random(13)
        failures = []
        for t in range(1000):
            m, n = rng.randint(1, 4), rng.randint(1, 5)
            rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            A = IntMatrix(rows, n)
            # HNF: transform, canonical form against gcd elimination
            res = hnf(A)
            if res.U @ A != res.H or abs(det(res.U)) != 1:
                failures.append((t, "hnf transform"))
            if res.basis.tolist() != oracles.gcd_echelon(rows, n):
                failures.append((t, "hnf oracle"))
            # SNF: invariant factors from determinantal divisors
            if elementary_divisors(A) != oracles.snf_divisors_oracle(rows):
                failures.append((t, "snf oracle"))
            # kernel: annihilates and has the right rank
            K = kernel_basis(A)
            if (K.rows and not (K @ A).is_zero()) or K.rows != m - oracles.frac_rank(rows):
                failures.append((t, "kernel"))
            # solve: decision matches the lattice oracle; certificates verify
            b = IntMatrix([[rng.randint(-9, 9)] for _ in range(m)], 1)
            X = solve_right(A, b)
            member = oracles.in_row_lattice(oracles.gcd_echelon(A.T.tolist(), m), list(b.col(0)))
            if (X is not None) != member:
                failures.append((t, "solve decision"))
            if X is not None and A @ X != b:
                failures.append((t, "solve value"))
            if X is None and not unsolvability_certificate(A, b).verify(A, b):
                failures.append((t, "certificate"))
            # divisor product equals |det| on nonsingular squares
            k = min(m, n)
            S = IntMatrix([r[:k] for r in rows[:k]], k)
            d = oracles.frac_det(S.tolist())
            if d:
                prod = 1
                for e in elementary_divisors(S):
                    prod *= e
                if prod != abs(d) or det(S) != d:
                    failures.append((t, "divisor product"))
        assert failures == []

