"""Lattices over Z[G(p, p-1)], their representations and isomorphism tests.

Two matrix conventions meet here.  A Lattice stores the ambient right
action in row convention: ``v . g = v @ act_g``.  A Representation stores
the column-convention matrices used for the shipped fixtures, which
are the transposes of the row-convention matrices expressed in the
lattice basis.  With that choice both satisfy the group relations:

    row:    A_y A_x = A_x^m A_y
    column: X Y = Y X^m
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .exactlin import (
    IntMatrix,
    det,
    hnf_basis,
    inverse,
    kernel_basis,
    lattice_contains,
    lattice_equal,
    snf,
    solve_left,
)
from .metacyclic import GroupParams


class ModuleError(ValueError):
    """A lattice or representation violates one of its invariants."""


def relation_failures(params: GroupParams, X: IntMatrix, Y: IntMatrix) -> list[str]:
    """Which defining relations fail for column-convention matrices X, Y."""
    n = X.rows
    eye = IntMatrix.identity(n)
    out = []
    if X.shape != (n, n) or Y.shape != (n, n):
        return [f"shapes {X.shape} and {Y.shape} are not both {n}x{n}"]
    if X ** params.p != eye:
        out.append(f"X^{params.p} != I")
    if Y ** params.q != eye:
        out.append(f"Y^{params.q} != I")
    if X @ Y != Y @ X ** params.m:
        out.append(f"X Y != Y X^{params.m}")
    return out


@dataclass(frozen=True)
class Representation:
    """Column-convention action matrices of x and y (the fixture convention)."""

    params: GroupParams
    X: IntMatrix
    Y: IntMatrix

    def __post_init__(self):
        bad = relation_failures(self.params, self.X, self.Y)
        if bad:
            raise ModuleError("group relations fail: " + "; ".join(bad))

    @property
    def dim(self) -> int:
        return self.X.rows

    @property
    def row_x(self) -> IntMatrix:
        return self.X.T

    @property
    def row_y(self) -> IntMatrix:
        return self.Y.T

    @classmethod
    def from_row_action(cls, params: GroupParams, ax: IntMatrix, ay: IntMatrix) -> Representation:
        return cls(params, ax.T, ay.T)

    def direct_sum(self, *others: Representation) -> Representation:
        reps = (self,) + others
        return Representation(
            self.params,
            IntMatrix.block_diag(*(r.X for r in reps)),
            IntMatrix.block_diag(*(r.Y for r in reps)),
        )

    def group_matrix(self, a: int, b: int) -> IntMatrix:
        """Row-convention matrix of x^a y^b."""
        return self.row_x ** (a % self.params.p) @ self.row_y ** (b % self.params.q)


def cyclic_rep(params: GroupParams) -> Representation:
    """Z[C_(p-1)] with x acting trivially and y cyclically permuting 1, y, ..., y^(p-2)."""
    q = params.q
    shift = IntMatrix([[int(i == (j + 1) % q) for j in range(q)] for i in range(q)], q)
    return Representation(params, IntMatrix.identity(q), shift)


@dataclass(frozen=True)
class Lattice:
    """Row span of ``basis`` inside Z^n, closed under the right action."""

    params: GroupParams
    basis: IntMatrix
    act_x: IntMatrix
    act_y: IntMatrix

    def __post_init__(self):
        n = self.basis.cols
        if self.act_x.shape != (n, n) or self.act_y.shape != (n, n):
            raise ModuleError("action matrices do not match the ambient dimension")
        if self.basis.rows and self.basis.rank() != self.basis.rows:
            raise ModuleError("basis rows are not linearly independent")

    @property
    def ambient_dim(self) -> int:
        return self.basis.cols

    @property
    def rank(self) -> int:
        return self.basis.rows

    def coords(self, vectors: IntMatrix) -> IntMatrix | None:
        """Coordinates of the rows of ``vectors`` in the basis, or None."""
        if self.rank == 0:
            return IntMatrix([[] for _ in range(vectors.rows)], 0) if vectors.is_zero() else None
        return solve_left(self.basis, vectors)

    def contains(self, v: Sequence[int] | IntMatrix) -> bool:
        return lattice_contains(self.basis, v)

    def is_closed(self) -> bool:
        return all(
            self.coords(self.basis @ a) is not None for a in (self.act_x, self.act_y)
        )

    def action_matrices(self) -> Representation:
        return action_matrices(self)

    def with_basis(self, basis: IntMatrix) -> Lattice:
        """Same module with a different basis (which must span the same lattice)."""
        if not lattice_equal(basis, self.basis):
            raise ModuleError("new basis spans a different lattice")
        return Lattice(self.params, basis, self.act_x, self.act_y)

    def sub(self, basis: IntMatrix) -> Lattice:
        return Lattice(self.params, basis, self.act_x, self.act_y)

    def act(self, v: IntMatrix, a: int, b: int) -> IntMatrix:
        """v . x^a y^b in ambient coordinates."""
        return v @ self.act_x ** (a % self.params.p) @ self.act_y ** (b % self.params.q)

    def orbit_span(self, v: Sequence[int]) -> IntMatrix:
        """HNF basis of the Z-span of {v . g : g in G}."""
        P = self.params
        vm = IntMatrix([v], self.ambient_dim)
        rows = []
        cur_b = vm
        for _b in range(P.q):
            cur = cur_b
            for _a in range(P.p):
                rows.append(cur.row(0))
                cur = cur @ self.act_x
            cur_b = cur_b @ self.act_y
        return hnf_basis(IntMatrix(rows, self.ambient_dim))

    def generated_by(self, v: Sequence[int]) -> bool:
        return lattice_equal(self.orbit_span(v), self.basis) if self.rank else not any(v)


def action_matrices(lat: Lattice) -> Representation:
    """Express the ambient action in the lattice basis.

    Row convention first: basis @ act = A @ basis.  The result is returned
    in column convention (transposed) and its relations are re-verified.
    """
    mats = []
    for act in (lat.act_x, lat.act_y):
        A = lat.coords(lat.basis @ act)
        if A is None:
            raise ModuleError("lattice is not closed under the action")
        mats.append(A)
    return Representation.from_row_action(lat.params, mats[0], mats[1])


def lattice_from_rep(rep: Representation) -> Lattice:
    """The standard lattice Z^n carrying ``rep`` (row-convention action)."""
    return Lattice(rep.params, IntMatrix.identity(rep.dim), rep.row_x, rep.row_y)


def check_sigma_condition(rep: Representation) -> bool:
    """True iff 1 + x + ... + x^(p-1) acts as zero."""
    n = rep.dim
    total = IntMatrix.zeros(n, n)
    power = IntMatrix.identity(n)
    for _ in range(rep.params.p):
        total = total + power
        power = power @ rep.X
    return total.is_zero()


# characteristic generators ------------------------------------------------

# row k -> (sign, power) in v.y = sign * v.(1+x)^power
CHAR_TABLE = {1: (-1, 1), 2: (1, 2), 3: (-1, 0), 4: (1, 1), 5: (-1, 2), 6: (1, 0)}


@dataclass(frozen=True)
class CharCertificate:
    k: int
    v: tuple[int, ...]
    sign: int
    power: int

    def check_equation(self, act_x: IntMatrix, act_y: IntMatrix) -> bool:
        n = act_x.rows
        vm = IntMatrix([self.v], n)
        rhs = vm @ (IntMatrix.identity(n) + act_x) ** self.power
        return vm @ act_y == rhs * self.sign

    def verify(self, lat: Lattice) -> bool:
        return (
            lat.contains(self.v)
            and self.check_equation(lat.act_x, lat.act_y)
            and lat.generated_by(self.v)
        )


def char_condition_matrix(rep_row_x: IntMatrix, rep_row_y: IntMatrix, sign: int, power: int) -> IntMatrix:
    n = rep_row_x.rows
    return rep_row_y - (IntMatrix.identity(n) + rep_row_x) ** power * sign


def find_char_generator(lat: Lattice, k: int, bound: int = 3) -> CharCertificate | None:
    """Search the lattice for a generator satisfying the row-k equation.

    Solves c @ (A_y - sign (I + A_x)^power) = 0 in lattice coordinates,
    then tests the kernel basis rows and their small combinations
    (coefficients in [-bound, bound]) for generating the whole lattice.
    """
    if k not in CHAR_TABLE:
        raise ValueError(f"row index must be in 1..6, got {k}")
    sign, power = CHAR_TABLE[k]
    if lat.rank == 0:
        return None
    rep = action_matrices(lat)
    K = kernel_basis(char_condition_matrix(rep.row_x, rep.row_y, sign, power))
    if K.rows == 0:
        return None
    K = hnf_basis(K)
    seen = set()
    candidates = [K.row(i) for i in range(K.rows)]
    for combo in itertools.product(range(-bound, bound + 1), repeat=K.rows):
        if any(combo):
            candidates.append(tuple(sum(c * K[i, j] for i, c in enumerate(combo)) for j in range(K.cols)))
    for c in candidates:
        if c in seen:
            continue
        seen.add(c)
        v = (IntMatrix([c], lat.rank) @ lat.basis).row(0)
        if lat.generated_by(v):
            return CharCertificate(k, v, sign, power)
    return None


def is_isomorphic_to_row(lat: Lattice, k: int) -> bool:
    """Isomorphism test against the k-th row module for p = 7.

    A rank-6 lattice is isomorphic to R(k) iff the norm of x acts as zero
    and some generator satisfies the row-k equation.
    """
    if lat.rank != 6 or lat.params.p != 7:
        return False
    if not check_sigma_condition(action_matrices(lat)):
        return False
    return find_char_generator(lat, k) is not None


# conjugacy -----------------------------------------------------------------


def conjugacy_check(h: IntMatrix, repA: Representation, repB: Representation) -> bool:
    """True iff h A h^-1 == B for both generator matrices."""
    if not h.is_square() or abs(det(h)) != 1:
        raise ModuleError("conjugating matrix is not unimodular")
    if h.rows != repA.dim or h.rows != repB.dim:
        return False
    return h @ repA.X == repB.X @ h and h @ repA.Y == repB.Y @ h


# quotients -----------------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    rep: Representation
    complement: IntMatrix  # ambient lifts of the quotient basis


def quotient_rep(lat: Lattice, sub: Lattice | IntMatrix, complement: IntMatrix | None = None) -> Representation:
    return quotient(lat, sub, complement).rep


def quotient(lat: Lattice, sub: Lattice | IntMatrix, complement: IntMatrix | None = None) -> Quotient:
    """Action on lat/sub in the basis given by the images of ``complement``.

    Without a designated complement, one is read off the Smith form of the
    inclusion.  Raises ModuleError if sub is not contained in lat or the
    quotient has torsion.
    """
    sub_basis = sub.basis if isinstance(sub, Lattice) else sub
    S = lat.coords(sub_basis) if sub_basis.rows else IntMatrix((), lat.rank)
    if S is None:
        raise ModuleError("sublattice is not contained in the lattice")
    r_s, r = sub_basis.rows, lat.rank
    if r_s:
        res = snf(S)
        divs = res.divisors
        if any(d != 1 for d in divs):
            raise ModuleError(f"quotient has torsion (elementary divisors {divs})")
    if complement is None:
        if r_s:
            Vinv = inverse(res.V)
            comp_coords = Vinv[r_s:]
        else:
            comp_coords = IntMatrix.identity(r)
        complement = comp_coords @ lat.basis if comp_coords.rows else IntMatrix((), lat.ambient_dim)
    if complement.rows != r - r_s:
        raise ModuleError(f"complement has {complement.rows} vectors, expected {r - r_s}")
    full = IntMatrix.vstack(sub_basis, complement)
    if r:
        F = lat.coords(full)
        if F is None or abs(det(F)) != 1:
            raise ModuleError("sublattice and complement do not form a basis of the lattice")
    q = complement.rows
    mats = []
    for act in (lat.act_x, lat.act_y):
        if q == 0:
            mats.append(IntMatrix((), 0))
            continue
        c = solve_left(full, complement @ act)
        mats.append(c[:, r_s:])
    return Quotient(Representation.from_row_action(lat.params, mats[0], mats[1]), complement)


# fullness over Z[C_(p-1)] ------------------------------------------------------


def _cyclic_mul_matrix(q: int, u: Sequence[int]) -> IntMatrix:
    # row i = y^i * u in Z[C_q]
    return IntMatrix([[u[(j - i) % q] for j in range(q)] for i in range(q)], q)


def fullness_automorphism_check(p: int, r: int) -> bool:
    """Multiplication by 1 + y + ... + y^(r-1) on the augmentation ideal of Z[C_(p-1)].

    True iff the map is onto the ideal (so an automorphism) and
    u - r lies in the ideal.
    """
    from math import gcd

    q = p - 1
    if not (1 <= r <= max(1, p - 2)) or gcd(r, q) != 1:
        raise ValueError(f"r must satisfy 1 <= r <= p-2 and gcd(r, p-1) = 1, got r={r}")
    ideal = IntMatrix([[int(j == (i + 1) % q) - int(j == i) for j in range(q)] for i in range(q)], q)
    ideal = hnf_basis(ideal)
    u = [1 if j < r else 0 for j in range(q)]
    image = ideal @ _cyclic_mul_matrix(q, u)
    if not lattice_equal(image, ideal):
        return False
    shifted = list(u)
    shifted[0] -= r
    return lattice_contains(ideal, shifted)
