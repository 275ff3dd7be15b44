"""The order T_(p-1)(Z, p), its row modules and explicit unit constructions.

T_(p-1)(Z, p) is the ring of (p-1)x(p-1) integer matrices whose entries
below the diagonal are divisible by p.  Its i-th row R(i) is a right
module over Z[G(p, p-1)] through the matrices lambda(x^-1), lambda(y^-1),
which act on row vectors from the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Sequence

from .exactlin import (
    IntMatrix,
    det,
    hnf_basis,
    inverse,
    kernel_basis,
    snf,
    solve_left,
    sylvester_system,
    xgcd,
)
from .fixtures import FixtureError, has_fixture, load_matrix
from .metacyclic import GroupParams, regular_action
from .modrep import Lattice


class ShapeError(ValueError):
    """A matrix does not have the required divisibility pattern."""


def tri_shape_ok(p: int, M: IntMatrix) -> bool:
    return all(M[i, j] % p == 0 for i in range(M.rows) for j in range(min(i, M.cols)))


@dataclass(frozen=True)
class TriMatrix:
    p: int
    entries: IntMatrix

    def __post_init__(self):
        n = self.p - 1
        if self.entries.shape != (n, n):
            raise ShapeError(f"expected a {n}x{n} matrix, got {self.entries.shape}")
        if not tri_shape_ok(self.p, self.entries):
            raise ShapeError(f"entry below the diagonal not divisible by {self.p}")

    def __matmul__(self, other: TriMatrix) -> TriMatrix:
        return TriMatrix(self.p, self.entries @ other.entries)

    def det(self) -> int:
        return det(self.entries)

    def is_unit(self) -> bool:
        return abs(self.det()) == 1

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i, i] for i in range(self.p - 1))

    @classmethod
    def identity(cls, p: int) -> TriMatrix:
        return cls(p, IntMatrix.identity(p - 1))


@dataclass(frozen=True)
class RowVector:
    p: int
    i: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.i <= self.p - 1:
            raise ValueError(f"row index {self.i} out of range 1..{self.p - 1}")
        if len(self.entries) != self.p - 1:
            raise ValueError("wrong vector length")
        if any(self.entries[j] % self.p for j in range(self.i - 1)):
            raise ShapeError(f"vector is not in row module {self.i}")


def row_basis(p: int, i: int) -> list[RowVector]:
    """Standard basis of R(i): e_j, multiplied by p when j < i."""
    if not 1 <= i <= p - 1:
        raise ValueError(f"row index {i} out of range 1..{p - 1}")
    n = p - 1
    return [
        RowVector(p, i, tuple((p if j < i - 1 else 1) * int(k == j) for k in range(n)))
        for j in range(n)
    ]


def row_basis_matrix(p: int, i: int) -> IntMatrix:
    return IntMatrix([v.entries for v in row_basis(p, i)], p - 1)


# lambda fixtures ---------------------------------------------------------------


@dataclass(frozen=True)
class LambdaFixture:
    p: int
    lx: TriMatrix
    ly: TriMatrix
    params: GroupParams

    def failures(self) -> list[str]:
        """Invariant violations (an empty list means the fixture is valid).

        The matrices act on row vectors from the right, so the relation
        y x = x^m y appears as ly @ lx == lx^m @ ly.
        """
        lx, ly = self.lx.entries, self.ly.entries
        eye = IntMatrix.identity(self.p - 1)
        out = []
        if lx ** self.p != eye:
            out.append(f"lambda_x^{self.p} != I")
        if ly ** (self.p - 1) != eye:
            out.append(f"lambda_y^{self.p - 1} != I")
        if ly @ lx != lx ** self.params.m @ ly:
            out.append(f"lambda_y lambda_x != lambda_x^{self.params.m} lambda_y")
        for name, M in (("lambda_x", lx), ("lambda_y", ly)):
            if abs(det(M)) != 1 or not tri_shape_ok(self.p, inverse(M)):
                out.append(f"{name} is not a unit of the triangular order")
        return out

    def row_lattice(self, i: int) -> Lattice:
        return Lattice(self.params, row_basis_matrix(self.p, i), self.lx.entries, self.ly.entries)


class UnsupportedPrime(ValueError):
    pass


def lambda_fixture(p: int = 7, base: str | Path | None = None, validate: bool = True) -> LambdaFixture:
    """Load the shipped lambda(x^-1), lambda(y^-1) matrices for p.

    Invariant failures raise ValueError listing every discrepancy; the
    matrices are never repaired.
    """
    if not has_fixture("lambda_x", p, base):
        if base is None and p != 7:
            raise UnsupportedPrime(f"no lambda fixture for p={p}")
    lx = load_matrix("lambda_x", p, base)
    ly = load_matrix("lambda_y", p, base)
    fx = LambdaFixture(p, TriMatrix(p, lx), TriMatrix(p, ly), GroupParams.for_prime(p))
    if validate:
        bad = fx.failures()
        if bad:
            raise ValueError("lambda fixture discrepancy: " + "; ".join(bad))
    return fx


def lambda_available(p: int, base: str | Path | None = None) -> bool:
    try:
        lambda_fixture(p, base)
        return True
    except (UnsupportedPrime, FixtureError, ValueError):
        return False


# homomorphisms -------------------------------------------------------------------


def intertwiners(ax1: IntMatrix, ay1: IntMatrix, ax2: IntMatrix, ay2: IntMatrix) -> list[IntMatrix]:
    """Z-basis of {M : A1 M = M A2 for both generators} (row convention)."""
    n, m = ax1.rows, ax2.rows
    zero = IntMatrix.zeros(n, m)
    sys_m, _ = sylvester_system([(ax1, ax2, zero), (ay1, ay2, zero)])
    K = hnf_basis(kernel_basis(sys_m.T))
    return [IntMatrix([K.row(r)[i * m:(i + 1) * m] for i in range(n)], m) for r in range(K.rows)]


def _flatten(mats: Sequence[IntMatrix], cols: int) -> IntMatrix:
    return IntMatrix([M.flatten() for M in mats], cols)


def unflatten(row: Sequence[int], n: int) -> IntMatrix:
    return IntMatrix([row[i * n:(i + 1) * n] for i in range(n)], n)


def hom_lattice(p: int, i: int, j: int, fixture: LambdaFixture) -> IntMatrix:
    """Basis (rows are flattened matrices) of the module maps R(i) -> R(j).

    A map is an integer matrix M commuting with both lambda matrices and
    sending every basis vector of R(i) into R(j).
    """
    n = p - 1
    lx, ly = fixture.lx.entries, fixture.ly.entries
    comm = intertwiners(lx, ly, lx, ly)
    Bi = row_basis_matrix(p, i)
    # entries of Bi @ M in the columns that must be divisible by p
    constraints = [
        [(Bi @ C)[r, c] for r in range(n) for c in range(j - 1)] for C in comm
    ]
    ncons = n * (j - 1)
    if ncons == 0:
        coeffs = IntMatrix.identity(len(comm))
    else:
        W = IntMatrix(constraints, ncons)
        stacked = IntMatrix.vstack(W, IntMatrix.identity(ncons) * p)
        K = kernel_basis(stacked)
        coeffs = hnf_basis(K[:, : len(comm)])
    flat = _flatten(comm, n * n)
    return hnf_basis(coeffs @ flat)


def hom_generator(p: int, i: int, j: int, fixture: LambdaFixture) -> IntMatrix:
    """The generator of a rank-one hom lattice, as a matrix."""
    H = hom_lattice(p, i, j, fixture)
    if H.rows != 1:
        raise ValueError(f"hom lattice has rank {H.rows}, expected 1")
    return unflatten(H.row(0), p - 1)


def _index_in(sub: Sequence[IntMatrix], full: Sequence[IntMatrix]) -> int:
    """Index of span(sub) in span(full); 0 when the index is infinite."""
    cols = len(full[0].flatten())
    F = _flatten(full, cols)
    S = _flatten(sub, cols)
    coords = solve_left(F, S)
    if coords is None:
        raise ValueError("composites do not lie in the hom lattice")
    divs = snf(coords).divisors
    if len(divs) < F.rows or any(d == 0 for d in divs[: F.rows]):
        return 0
    out = 1
    for d in divs[: F.rows]:
        out *= d
    return out


@lru_cache(maxsize=None)
def _row_rep(fixture: LambdaFixture, i: int):
    return fixture.row_lattice(i).action_matrices()


@lru_cache(maxsize=None)
def _maps_to_free(fixture: LambdaFixture, i: int) -> tuple[IntMatrix, ...]:
    src = _row_rep(fixture, i)
    rx, ry = regular_action(fixture.params)
    return tuple(intertwiners(src.row_x, src.row_y, rx, ry))


@lru_cache(maxsize=None)
def _maps_from_free(fixture: LambdaFixture, j: int) -> tuple[IntMatrix, ...]:
    dst = _row_rep(fixture, j)
    rx, ry = regular_action(fixture.params)
    return tuple(intertwiners(rx, ry, dst.row_x, dst.row_y))


def hom_der_order(p: int, i: int, j: int, fixture: LambdaFixture | None) -> int | None:
    """Order of Hom(R(i), R(j)) modulo maps factoring through a free module.

    Everything is computed in lattice coordinates: the maps R(i) -> Lambda
    and Lambda -> R(j) are found as intertwiner lattices, all their
    composites are formed, and the index of their span inside
    Hom(R(i), R(j)) is returned.  Returns None when no lambda fixture
    exists for p.
    """
    if fixture is None:
        return None
    src, dst = _row_rep(fixture, i), _row_rep(fixture, j)
    homs = intertwiners(src.row_x, src.row_y, dst.row_x, dst.row_y)
    composites = [h @ g for h in _maps_to_free(fixture, i) for g in _maps_from_free(fixture, j)]
    return _index_in(composites, homs)


# Bezout units and the determinant obstruction -----------------------------------


def _check_residues(p: int, residues: Sequence[int]) -> None:
    for c in residues:
        if c % p == 0:
            raise ValueError(f"residue {c} is divisible by {p}")


def bezout_block(p: int, size: int, i: int, n: int, c: int) -> IntMatrix:
    """Unit of T_(p-1)(Z, p) that differs from I only at positions {i, n}.

    Its diagonal entry at i is c; the entry at n is whatever Bezout forces.
    The p-divisible corner sits below the diagonal: at (n, i) if i < n,
    at (i, n) if i > n.  Indices are 0-based.
    """
    g, s, t = xgcd(c, p)
    if g != 1:
        raise ValueError(f"residue {c} is not coprime to {p}")
    # s*c + t*p == 1, so [[c, -t], [p, s]] and [[s, p], [-t, c]]^T style blocks have det 1
    M = IntMatrix.identity(size).tolist()
    lo, hi = min(i, n), max(i, n)
    if i < n:
        M[lo][lo], M[lo][hi], M[hi][lo], M[hi][hi] = c, -t, p, s
    else:
        M[lo][lo], M[lo][hi], M[hi][lo], M[hi][hi] = s, -t, p, c
    return IntMatrix(M, size)


def bezout_unit(p: int, free_slot: int, residues: Sequence[int]) -> TriMatrix:
    """Unit whose diagonal matches ``residues`` mod p away from ``free_slot``.

    ``free_slot`` is 1-based; ``residues`` lists the p-2 targets for the
    other positions in increasing order.  The unit is a product of 2x2
    Bezout blocks, each coupling one constrained position with the free slot.
    """
    size = p - 1
    if not 1 <= free_slot <= size:
        raise ValueError(f"free slot {free_slot} out of range 1..{size}")
    if len(residues) != size - 1:
        raise ValueError(f"expected {size - 1} residues, got {len(residues)}")
    _check_residues(p, residues)
    n = free_slot - 1
    positions = [k for k in range(size) if k != n]
    u = IntMatrix.identity(size)
    for pos, c in zip(positions, residues):
        if c % p == 1:
            continue
        u = u @ bezout_block(p, size, pos, n, c)
    return TriMatrix(p, u)


def diag_residue_obstruction(p: int, residues: Sequence[int]) -> bool:
    """Whether a unit with this diagonal mod p can exist.

    For a unit u of T_(p-1)(Z, p), det(u) = +-1 and det(u) is congruent to
    the product of the diagonal mod p, so the product must be +-1 mod p.
    """
    prod = 1
    for c in residues:
        prod = prod * c % p
    return prod in (1, p - 1)


# automorphisms of R(2) + (rows other than the first) ------------------------------


def aut_shape_ok(p: int, M: IntMatrix) -> bool:
    """Rows 3.. have p-divisible entries left of the diagonal; rows 1, 2 are free."""
    n = p - 1
    if M.shape != (n, n):
        return False
    return all(M[i, j] % p == 0 for i in range(2, n) for j in range(i))


def aut_k_map(p: int, M: IntMatrix) -> tuple[int, ...]:
    """(a_12, a_22, a_33, ..., a_(p-1)(p-1)) mod p."""
    if not aut_shape_ok(p, M):
        raise ShapeError("matrix is not an endomorphism of the required shape")
    return (M[0, 1] % p, M[1, 1] % p) + tuple(M[i, i] % p for i in range(2, p - 1))


AUT_KINDS = ("shear", "swap", "double", "diag_double", "shift")


def aut_generator(p: int, kind: str, param: int = 0) -> IntMatrix:
    """One of the explicit generating automorphisms.

    shear(n):      top-left block [[1, n], [0, 1]], k-value (n, 1, 1, ...)
    swap:          top-left block [[0, 1], [1, 0]], k-value (1, 0, 1, ...)
    double:        k-value (0, 2, 1, ...)
    diag_double:   k-value (0, 1, 2, 1, ...)
    shift(i):      block [[(p+1)/2, 1], [p, 2]] on positions i, i+1 (1-based, i >= 3);
                   k-value (p+1)/2 at i and 2 at i+1
    """
    n = p - 1
    half = (p + 1) // 2
    M = IntMatrix.identity(n).tolist()
    if kind == "shear":
        M[0][1] = param
    elif kind == "swap":
        M[0][0], M[0][1], M[1][0], M[1][1] = 0, 1, 1, 0
    elif kind == "double":
        if n < 3:
            raise ValueError("this generator needs p >= 5")
        M[0][0], M[1][0], M[1][1] = half, -1, 2
        M[0][2] = 1
        M[2][1] = p
    elif kind == "diag_double":
        if n < 3:
            raise ValueError("this generator needs p >= 5")
        M[0][0] = half
        M[0][2] = 1
        M[2][0] = p
        M[2][2] = 2
    elif kind == "shift":
        i = param or 3
        if not 3 <= i <= n - 1:
            raise ValueError(f"shift position must lie in 3..{n - 1}, got {i}")
        a = i - 1
        M[a][a], M[a][a + 1], M[a + 1][a], M[a + 1][a + 1] = half, 1, p, 2
    else:
        raise ValueError(f"unknown generator kind {kind!r}; expected one of {AUT_KINDS}")
    out = IntMatrix(M, n)
    _postcheck(p, out, _expected_k(p, kind, param))
    return out


def _expected_k(p: int, kind: str, param: int) -> tuple[int, ...]:
    n = p - 1
    base = [0, 1] + [1] * (n - 2)
    if kind == "shear":
        base[0] = param % p
    elif kind == "swap":
        base[0], base[1] = 1, 0
    elif kind == "double":
        base[1] = 2
    elif kind == "diag_double":
        base[2] = 2
    elif kind == "shift":
        i = param or 3
        base[i - 1] = (p + 1) // 2 % p
        base[i] = 2
    return tuple(base)


def _postcheck(p: int, M: IntMatrix, target: Sequence[int]) -> None:
    if not aut_shape_ok(p, M):
        raise ShapeError("constructed matrix has the wrong shape")
    if abs(det(M)) != 1:
        raise ArithmeticError("constructed matrix is not invertible over Z")
    k = aut_k_map(p, M)
    if k != tuple(t % p for t in target):
        raise ArithmeticError(f"constructed matrix has k-value {k}, expected {tuple(target)}")


def _shear(p: int, n: int) -> IntMatrix:
    return aut_generator(p, "shear", n)


def _swap(p: int) -> IntMatrix:
    return aut_generator(p, "swap")


def _top_word(c1: int, c2: int) -> list[tuple[str, int]]:
    """Word in shears and swaps whose matrix has second column (c1, c2).

    Requires gcd(c1, c2) = 1.  The word is found by Euclid's algorithm on
    the target column and inverted.
    """
    ops: list[tuple[str, int]] = []
    u, v = c1, c2
    while u != 0:
        if v == 0:
            ops.append(("swap", 0))
            u, v = v, u
            continue
        q = u // v
        if q:
            ops.append(("shear", -q))
            u -= q * v
        ops.append(("swap", 0))
        u, v = v, u
    # ops_k ... ops_1 (c1, c2) = (0, v), so ops_1^-1 ... ops_k^-1 has second column v*(c1, c2)
    word = [("shear", -n) if k == "shear" else (k, n) for k, n in ops]
    if v == -1:
        # -I = (shear(1) . swap . shear(-1) . swap . shear(1))^2
        minus_one = [("shear", 1), ("swap", 0), ("shear", -1), ("swap", 0), ("shear", 1)] * 2
        word = word + minus_one
    return word


def _coprime_lift(c1: int, c2: int, p: int) -> tuple[int, int]:
    """Integers congruent to (c1, c2) mod p with gcd 1 (not both zero mod p)."""
    a, b = c1 % p, c2 % p
    for cand in ((a, b), (a, b - p)):
        if gcd(*cand) == 1:
            return cand
    a = a or p
    while gcd(a, b) != 1:
        b += p
    return a, b


def _eval_word(p: int, word: Sequence[tuple[str, int]]) -> IntMatrix:
    M = IntMatrix.identity(p - 1)
    for kind, n in word:
        M = M @ (_shear(p, n) if kind == "shear" else _swap(p))
    return M


def _diag_unit(p: int, i: int, c: int) -> IntMatrix:
    """Automorphism with k-value (0, 1, 1, .., c at i, .., 1), i 1-based >= 3.

    A 2x2 Bezout block [[s, -t], [p, c]] on positions {1, i} with s*c + t*p = 1.
    It generalises the diag_double generator, where c = 2 and s = (p+1)/2.
    """
    g, s, t = xgcd(c, p)
    if g != 1:
        raise ValueError(f"residue {c} is not coprime to {p}")
    M = IntMatrix.identity(p - 1).tolist()
    a = i - 1
    M[0][0], M[0][a], M[a][0], M[a][a] = s, -t, p, c
    return IntMatrix(M, p - 1)


def _doubling_diag_generator(p: int, i: int) -> IntMatrix:
    """diag_double followed by shifts: k-value 2 at position i, 1 elsewhere."""
    M = aut_generator(p, "diag_double")
    for k in range(3, i):
        M = M @ aut_generator(p, "shift", k)
    return M


def _discrete_log2(c: int, p: int) -> int | None:
    v = 1
    for a in range(p - 1):
        if v == c % p:
            return a
        v = v * 2 % p
    return None


def unit_for_target(p: int, a12: int, a22: int, diag: Sequence[int], strict: bool = False) -> IntMatrix:
    """Automorphism with k-value (a12, a22, diag...) mod p.

    The unit is assembled as T . D, where T fixes the top-left 2x2 block
    and D fixes the remaining diagonal entries (k is multiplicative in
    this order).

    With ``strict=True`` only the literal recipe is used: T is a shear or
    swap times a power of ``double`` and D is a product of powers of the
    diag_double/shift composites.  That only reaches residues that are
    powers of 2 mod p, so it raises ValueError for other targets.  The
    default route builds T from a shear/swap word found by Euclid's
    algorithm and D from Bezout blocks, which covers every valid target.
    """
    n = p - 1
    if len(diag) != n - 2:
        raise ValueError(f"expected {n - 2} diagonal residues, got {len(diag)}")
    if a12 % p == 0 and a22 % p == 0:
        raise ValueError("a12 and a22 must not both vanish mod p")
    _check_residues(p, diag)
    target = (a12 % p, a22 % p) + tuple(c % p for c in diag)

    if strict:
        top = _strict_top(p, a12, a22)
        D = IntMatrix.identity(n)
        for pos, c in enumerate(diag, start=3):
            a = _discrete_log2(c, p)
            if a is None:
                raise ValueError(f"residue {c} mod {p} is not a power of 2")
            D = D @ _doubling_diag_generator(p, pos) ** a
            _postcheck(p, D, (0, 1) + tuple(
                (diag[k - 3] if k <= pos else 1) for k in range(3, n + 1)))
    else:
        c1, c2 = _coprime_lift(a12, a22, p)
        top = _eval_word(p, _top_word(c1, c2))
        _postcheck(p, top, (c1, c2) + (1,) * (n - 2))
        D = IntMatrix.identity(n)
        for pos, c in enumerate(diag, start=3):
            if c % p != 1:
                D = D @ _diag_unit(p, pos, c)
    U = top @ D
    _postcheck(p, U, target)
    return U


def _strict_top(p: int, a12: int, a22: int) -> IntMatrix:
    dbl = aut_generator(p, "double")
    if a22 % p:
        a = _discrete_log2(a22, p)
        if a is None:
            raise ValueError(f"residue {a22} mod {p} is not a power of 2")
        shear = a12 * pow(a22, -1, p) % p
        return _shear(p, shear) @ dbl ** a
    a = _discrete_log2(a12, p)
    if a is None:
        raise ValueError(f"residue {a12} mod {p} is not a power of 2")
    return _swap(p) @ dbl ** a


def valid_aut_targets(p: int):
    """All k-values the construction must realise: (a12, a22) != (0, 0), diag nonzero."""
    import itertools

    for a12 in range(p):
        for a22 in range(p):
            if a12 == 0 and a22 == 0:
                continue
            for diag in itertools.product(range(1, p), repeat=p - 3):
                yield a12, a22, diag


def unit_with_diagonal(p: int, residues: Sequence[int]) -> TriMatrix | None:
    """A unit whose diagonal is congruent to ``residues`` mod p, or None.

    None is returned exactly when the determinant obstruction applies.
    Otherwise the Bezout construction fixes positions 2..p-1, the first
    entry is forced by det = 1, and a sign flip handles a product of -1.
    """
    if len(residues) != p - 1:
        raise ValueError(f"expected {p - 1} residues, got {len(residues)}")
    _check_residues(p, residues)
    if not diag_residue_obstruction(p, residues):
        return None
    u = bezout_unit(p, 1, residues[1:]).entries
    prod = 1
    for c in residues:
        prod = prod * c % p
    if prod == p - 1:
        flip = IntMatrix.diag([-1] + [1] * (p - 2))
        u = flip @ u
    return TriMatrix(p, u)
