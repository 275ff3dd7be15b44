import cmath
from math import gcd

import pytest

from metad2.exactlin import IntMatrix
from metad2.metacyclic import P7, GroupParams, RingElem, ideal_lattice, x_norm
from metad2.modrep import (
    CHAR_TABLE,
    CharCertificate,
    Lattice,
    ModuleError,
    Representation,
    action_matrices,
    check_sigma_condition,
    conjugacy_check,
    cyclic_rep,
    find_char_generator,
    fullness_automorphism_check,
    is_isomorphic_to_row,
    lattice_from_rep,
    quotient,
    relation_failures,
)
from metad2.trimat import lambda_fixture


@pytest.fixture(scope="module")
def lam():
    return lambda_fixture(7)


def test_cyclic_rep_relations():
    sigma = cyclic_rep(P7)
    assert sigma.dim == 6
    assert not relation_failures(P7, sigma.X, sigma.Y)
    assert not check_sigma_condition(sigma)  # x acts trivially, so the norm acts as 7


def test_bad_relations_rejected():
    with pytest.raises(ModuleError):
        Representation(P7, IntMatrix([[2]]), IntMatrix([[1]]))
    assert relation_failures(P7, IntMatrix([[1]]), IntMatrix([[-1]])) == []


def test_direct_sum_and_group_matrix():
    sigma = cyclic_rep(P7)
    s2 = sigma.direct_sum(sigma)
    assert s2.dim == 12
    assert sigma.group_matrix(0, 6) == IntMatrix.identity(6)


def test_action_matrices_reconstruct(lam):
    for k in range(1, 7):
        lat = lam.row_lattice(k)
        rep = action_matrices(lat)
        assert lat.basis @ lat.act_x == rep.row_x @ lat.basis
        assert lat.basis @ lat.act_y == rep.row_y @ lat.basis
        assert check_sigma_condition(rep)


def test_row_lattices_closed(lam):
    for k in range(1, 7):
        assert lam.row_lattice(k).is_closed()


def test_char_generators_only_for_own_row(lam):
    for k in range(1, 7):
        lat = lam.row_lattice(k)
        cert = find_char_generator(lat, k)
        assert cert is not None and cert.verify(lat)
        assert is_isomorphic_to_row(lat, k)
    # rows are pairwise non-isomorphic: the row-1 lattice has no generator for the row-2 equation
    assert not is_isomorphic_to_row(lam.row_lattice(1), 2)
    assert not is_isomorphic_to_row(lam.row_lattice(6), 3)


def test_char_certificate_rejects_wrong_vector(lam):
    lat = lam.row_lattice(2)
    sign, power = CHAR_TABLE[2]
    bogus = CharCertificate(2, (7, 0, 0, 0, 0, 0), sign, power)
    assert not bogus.verify(lat)


def test_lattice_validation():
    with pytest.raises(ModuleError):
        Lattice(P7, IntMatrix([[1, 0], [2, 0]]), IntMatrix.identity(2), IntMatrix.identity(2))
    with pytest.raises(ModuleError):
        Lattice(P7, IntMatrix.identity(2), IntMatrix.identity(3), IntMatrix.identity(2))


def test_with_basis_requires_same_lattice(lam):
    lat = lam.row_lattice(3)
    U = IntMatrix.identity(6)
    assert lat.with_basis(U @ lat.basis).rank == 6
    with pytest.raises(ModuleError):
        lat.with_basis(lat.basis * 2)


def test_conjugacy_check():
    sigma = cyclic_rep(P7)
    P = sigma.Y  # a permutation that commutes with Y
    assert conjugacy_check(P, sigma, sigma)
    with pytest.raises(ModuleError):
        conjugacy_check(IntMatrix.identity(6) * 2, sigma, sigma)


def test_quotient_of_regular_module_by_augmentation_kernel():
    # Lambda / (1 + x + ... + x^6)Lambda-complement: take sub = [x - 1), quotient = Z[C6]
    x = RingElem.x(P7)
    whole = ideal_lattice([RingElem.one(P7)])
    sub = ideal_lattice([x - 1])
    q = quotient(whole, sub)
    assert q.rep.dim == 6
    assert q.rep.X == IntMatrix.identity(6)
    assert q.rep.Y ** 6 == IntMatrix.identity(6)
    assert q.rep.Y != IntMatrix.identity(6)


def test_quotient_errors():
    whole = ideal_lattice([RingElem.one(P7)])
    norm = ideal_lattice([x_norm(P7)])
    with pytest.raises(ModuleError):
        quotient(norm, whole)  # not contained
    twice = ideal_lattice([2 * RingElem.one(P7)])
    with pytest.raises(ModuleError):
        quotient(whole, twice)  # torsion


def test_lattice_from_rep_roundtrip():
    sigma = cyclic_rep(P7)
    rep = action_matrices(lattice_from_rep(sigma))
    assert rep.X == sigma.X and rep.Y == sigma.Y


def _norm_of_unit(p, r):
    # product over nontrivial (p-1)-th roots of unity of 1 + z + ... + z^(r-1)
    q = p - 1
    prod = 1
    for k in range(1, q):
        z = cmath.exp(2j * cmath.pi * k / q)
        prod *= sum(z ** i for i in range(r))
    return round(abs(prod))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_fullness_matches_norm_oracle(p):
    for r in range(1, p - 1):
        if gcd(r, p - 1) != 1:
            with pytest.raises(ValueError):
                fullness_automorphism_check(p, r)
            continue
        # onto the augmentation ideal iff the index (the norm) is 1
        assert _norm_of_unit(p, r) == 1
        assert fullness_automorphism_check(p, r)


def test_non_coprime_norm_vanishes():
    # sanity of the oracle itself: r = 2 for p = 7 kills z = -1
    assert _norm_of_unit(7, 2) == 0


def test_params_other_prime():
    P5 = GroupParams.for_prime(5)
    assert cyclic_rep(P5).dim == 4
