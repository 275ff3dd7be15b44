"""Exact integer linear algebra.

Everything here works on Python ints, so no intermediate value can
overflow.  Matrices act on row vectors: a lattice is the row span of a
basis matrix and modules are acted on by right multiplication.

The decision procedures (lattice membership and equality, solvability
over Z) all reduce to the Hermite and Smith normal forms below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s, next_s = 1, 0
    t, next_t = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        s, next_s = next_s, s - q * next_s
        t, next_t = next_t, t - q * next_t
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, s, t = -g, -s, -t
    return g, s, t


class MatrixFormatError(ValueError):
    """Raised when matrix text cannot be parsed; carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        where = f" (line {line})" if line is not None else ""
        super().__init__(message + where)


class IntMatrix:
    """Immutable dense matrix of Python ints."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Sequence[int]] = (), cols: int | None = None):
        rows = tuple(tuple(int(v) for v in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise ValueError(f"ragged matrix: expected {cols} columns, got {len(row)}")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def vstack(cls, *blocks: IntMatrix) -> IntMatrix:
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("vstack: column counts differ")
        return cls([row for b in blocks for row in b._data], cols)

    @classmethod
    def hstack(cls, *blocks: IntMatrix) -> IntMatrix:
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("hstack: row counts differ")
        return cls(
            [sum((b._data[i] for b in blocks), ()) for i in range(rows)],
            sum(b.cols for b in blocks),
        )

    @classmethod
    def block_diag(cls, *blocks: IntMatrix) -> IntMatrix:
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i, row in enumerate(b._data):
                out[r + i][c:c + b.cols] = row
            r += b.rows
            c += b.cols
        return cls(out, m)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._data]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._data)

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            if isinstance(i, slice) or isinstance(j, slice):
                ri = range(self.rows)[i] if isinstance(i, slice) else [i]
                cj = range(self.cols)[j] if isinstance(j, slice) else [j]
                return IntMatrix([[self._data[a][b] for b in cj] for a in ri], len(cj))
            return self._data[i][j]
        if isinstance(key, slice):
            return IntMatrix(self._data[key], self.cols)
        return self._data[key]

    def __iter__(self):
        return iter(self._data)

    def __len__(self) -> int:
        return self.rows

    def flatten(self) -> tuple[int, ...]:
        return tuple(v for row in self._data for v in row)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self._data for v in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic ---------------------------------------------------------

    @property
    def T(self) -> IntMatrix:
        return IntMatrix([self.col(j) for j in range(self.cols)], self.rows)

    def transpose(self) -> IntMatrix:
        return self.T

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-a for a in r] for r in self._data], self.cols)

    def __mul__(self, k: int) -> IntMatrix:
        if not isinstance(k, int):
            return NotImplemented
        return IntMatrix([[k * a for a in r] for r in self._data], self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix(_matmul(self._data, other._data, other.cols), other.cols)

    def __pow__(self, n: int) -> IntMatrix:
        if not self.is_square():
            raise ValueError("matrix power of a non-square matrix")
        if n < 0:
            return inverse(self) ** (-n)
        result = IntMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def det(self) -> int:
        return det(self)

    def rank(self) -> int:
        return rank(self)

    # text format --------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines.extend(" ".join(str(v) for v in row) for row in self._data)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> IntMatrix:
        lines = [ln for ln in text.splitlines()]
        # tolerate trailing blank lines only
        while lines and not lines[-1].strip():
            lines.pop()
        if not lines:
            raise MatrixFormatError("empty matrix text", 1)
        header = lines[0].split()
        if len(header) != 2:
            raise MatrixFormatError("header must be 'rows cols'", 1)
        try:
            rows, cols = int(header[0]), int(header[1])
        except ValueError:
            raise MatrixFormatError("header must hold two integers", 1) from None
        if rows < 0 or cols < 0:
            raise MatrixFormatError("negative dimension in header", 1)
        body = lines[1:]
        if len(body) != rows:
            raise MatrixFormatError(f"header declares {rows} rows, found {len(body)}", 1)
        data = []
        for k, line in enumerate(body, start=2):
            parts = line.split()
            if len(parts) != cols:
                raise MatrixFormatError(f"expected {cols} entries, found {len(parts)}", k)
            try:
                data.append([int(v) for v in parts])
            except ValueError:
                raise MatrixFormatError("non-integer entry", k) from None
        return cls(data, cols)


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], bcols: int) -> list[list[int]]:
    out = []
    for row in a:
        acc = [0] * bcols
        for k, v in enumerate(row):
            if v:
                brow = b[k]
                for j in range(bcols):
                    if brow[j]:
                        acc[j] += v * brow[j]
        out.append(acc)
    return out


def as_matrix(obj, cols: int | None = None) -> IntMatrix:
    if isinstance(obj, IntMatrix):
        return obj
    return IntMatrix(obj, cols)


# determinants and rank ----------------------------------------------------


def det(A: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    if not A.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def rank(A: IntMatrix) -> int:
    return len(_echelon_rows(A.tolist(), A.cols))


def _echelon_rows(rows: list[list[int]], ncols: int) -> list[list[int]]:
    # fraction-free row echelon; only the count and span matter to callers
    rows = [r[:] for r in rows if any(r)]
    out = []
    for c in range(ncols):
        pivot = next((r for r in rows if r[c]), None)
        if pivot is None:
            continue
        rows.remove(pivot)
        pc = pivot[c]
        rows = [[pc * a - r[c] * b for a, b in zip(r, pivot)] if r[c] else r for r in rows]
        rows = [r for r in rows if any(r)]
        out.append(pivot)
        if not rows:
            break
    return out


# Hermite normal form ------------------------------------------------------


@dataclass(frozen=True)
class HnfResult:
    H: IntMatrix
    U: IntMatrix
    rank: int

    @property
    def basis(self) -> IntMatrix:
        """The nonzero rows of ``H``: a basis of the row lattice."""
        return self.H[: self.rank]


def _hnf_augmented(rows: list[list[int]], ncols: int) -> int:
    """In-place row HNF of ``rows`` on their first ``ncols`` columns.

    Any columns past ``ncols`` ride along (used for the transform).
    Returns the rank.
    """
    m = len(rows)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = [i for i in range(r, m) if rows[i][c]]
        if not nz:
            continue
        # bring the smallest entry up, then fold the others in with xgcd
        best = min(nz, key=lambda i: abs(rows[i][c]))
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r]
        for i in range(r + 1, m):
            b = rows[i][c]
            if not b:
                continue
            a = piv[c]
            if b % a == 0:
                q = b // a
                rows[i] = [y - q * x for x, y in zip(piv, rows[i])]
                continue
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            other = rows[i]
            piv = [s * x + t * y for x, y in zip(piv, other)]
            rows[i] = [ag * y - bg * x for x, y in zip(rows[r], other)]
            rows[r] = piv
        if piv[c] < 0:
            piv = [-x for x in piv]
            rows[r] = piv
        p = piv[c]
        for i in range(r):
            q = rows[i][c] // p
            if q:
                rows[i] = [y - q * x for x, y in zip(piv, rows[i])]
        r += 1
    return r


def hnf(A: IntMatrix) -> HnfResult:
    """Row Hermite normal form with transform: ``U @ A == H``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and
    zero rows come last, so ``H`` depends only on the row lattice of ``A``.
    """
    m, n = A.shape
    rows = [list(A.row(i)) + [int(i == j) for j in range(m)] for i in range(m)]
    rk = _hnf_augmented(rows, n)
    H = IntMatrix([row[:n] for row in rows], n)
    U = IntMatrix([row[n:] for row in rows], m)
    return HnfResult(H, U, rk)


def hnf_basis(A: IntMatrix) -> IntMatrix:
    """Canonical basis (nonzero HNF rows) of the row lattice of ``A``."""
    rows = A.tolist()
    rk = _hnf_augmented(rows, A.cols)
    return IntMatrix(rows[:rk], A.cols)


def is_hnf(H: IntMatrix) -> bool:
    last = -1
    seen_zero = False
    pivots = []
    for i in range(H.rows):
        row = H.row(i)
        lead = next((j for j, v in enumerate(row) if v), None)
        if lead is None:
            seen_zero = True
            continue
        if seen_zero or lead <= last or row[lead] <= 0:
            return False
        pivots.append((i, lead))
        last = lead
    for i, j in pivots:
        p = H[i, j]
        if any(not 0 <= H[k, j] < p for k in range(i)):
            return False
    return True


# Smith normal form --------------------------------------------------------


@dataclass(frozen=True)
class SnfResult:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def divisors(self) -> list[int]:
        """Elementary divisors, including trailing zeros up to min(rows, cols)."""
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d)


def snf(A: IntMatrix) -> SnfResult:
    """Smith normal form with transforms: ``U @ A @ V == D``."""
    m, n = A.shape
    D = A.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_combine(i, k, s, t, u, v):
        # (row_i, row_k) <- (s*row_i + t*row_k, u*row_i + v*row_k)
        for M in (D, U):
            ri, rk = M[i], M[k]
            M[i] = [s * a + t * b for a, b in zip(ri, rk)]
            M[k] = [u * a + v * b for a, b in zip(ri, rk)]

    def col_combine(j, k, s, t, u, v):
        # (col_j, col_k) <- (s*col_j + t*col_k, u*col_j + v*col_k)
        for M in (D, V):
            for row in M:
                a, b = row[j], row[k]
                row[j] = s * a + t * b
                row[k] = u * a + v * b

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for M in (D, V):
            for row in M:
                row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            for i in range(t + 1, m):
                b = D[i][t]
                if not b:
                    continue
                a = D[t][t]
                if b % a == 0:
                    row_combine(t, i, 1, 0, -(b // a), 1)
                else:
                    g, s, tt = xgcd(a, b)
                    row_combine(t, i, s, tt, -(b // g), a // g)
            for j in range(t + 1, n):
                b = D[t][j]
                if not b:
                    continue
                a = D[t][t]
                if b % a == 0:
                    col_combine(t, j, 1, 0, -(b // a), 1)
                else:
                    g, s, tt = xgcd(a, b)
                    col_combine(t, j, s, tt, -(b // g), a // g)
            if any(D[i][t] for i in range(t + 1, m)):
                continue
            a = D[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % a),
                None,
            )
            if bad is None:
                break
            row_combine(t, bad, 1, 1, 0, 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return SnfResult(IntMatrix(D, n), IntMatrix(U, m), IntMatrix(V, n))


def elementary_divisors(A: IntMatrix) -> list[int]:
    return [d for d in snf(A).divisors if d]


# kernels, inverses, solving ----------------------------------------------


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Saturated Z-basis (as rows) of the left kernel ``{v : v @ A == 0}``."""
    res = hnf(A)
    return IntMatrix(res.U.tolist()[res.rank:], A.rows)


def right_kernel_basis(A: IntMatrix) -> IntMatrix:
    """Rows spanning ``{v : A @ v^T == 0}``."""
    return kernel_basis(A.T)


def inverse(A: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix."""
    if not A.is_square():
        raise ValueError("inverse of a non-square matrix")
    X = solve_right(A, IntMatrix.identity(A.rows))
    if X is None:
        raise ValueError("matrix is not invertible over Z")
    return X


@dataclass(frozen=True)
class Certificate:
    """Witness that ``A @ X == B`` has no integer solution.

    ``w`` is an integer row vector with ``w @ A`` divisible by ``modulus``
    entrywise while entry ``column`` of ``w @ B`` is not.  A ``modulus`` of
    zero means ``w @ A == 0`` with that entry of ``w @ B`` nonzero.  Either
    way ``w / modulus`` pairs integrally with the column space of ``A`` but
    not with ``B``.
    """

    w: tuple[int, ...]
    modulus: int
    column: int
    residue: int

    def verify(self, A: IntMatrix, B: IntMatrix) -> bool:
        wA = [sum(wi * a for wi, a in zip(self.w, col)) for col in zip(*A.tolist())] if A.rows else [0] * A.cols
        wB = sum(wi * b for wi, b in zip(self.w, B.col(self.column)))
        if self.modulus == 0:
            return all(v == 0 for v in wA) and wB != 0
        return all(v % self.modulus == 0 for v in wA) and wB % self.modulus != 0

    def describe(self) -> str:
        if self.modulus == 0:
            return f"w.A = 0 but (w.B)[{self.column}] = {self.residue} != 0"
        return (
            f"w.A = 0 mod {self.modulus} but (w.B)[{self.column}] = "
            f"{self.residue} mod {self.modulus}"
        )


def _solve(A: IntMatrix, B: IntMatrix) -> tuple[IntMatrix | None, Certificate | None]:
    if A.rows != B.rows:
        raise ValueError(f"incompatible shapes {A.shape} and {B.shape}")
    res = snf(A)
    D, U, V = res.D, res.U, res.V
    UB = U @ B
    Y = [[0] * B.cols for _ in range(A.cols)]
    for k in range(A.rows):
        d = D[k, k] if k < min(A.shape) else 0
        for j in range(B.cols):
            v = UB[k, j]
            if d:
                if v % d:
                    return None, Certificate(U.row(k), d, j, v % d)
                Y[k][j] = v // d
            elif v:
                return None, Certificate(U.row(k), 0, j, v)
    return V @ IntMatrix(Y, B.cols), None


def solve_right(A: IntMatrix, B: IntMatrix) -> IntMatrix | None:
    """Some integer ``X`` with ``A @ X == B``, or None if there is none."""
    return _solve(A, B)[0]


def unsolvability_certificate(A: IntMatrix, B: IntMatrix) -> Certificate | None:
    """Certificate that ``A @ X == B`` has no integer solution (None if solvable)."""
    return _solve(A, B)[1]


def solve_left(A: IntMatrix, B: IntMatrix) -> IntMatrix | None:
    """Some integer ``X`` with ``X @ A == B``, or None."""
    X = solve_right(A.T, B.T)
    return None if X is None else X.T


def coordinates(basis: IntMatrix, v: IntMatrix) -> IntMatrix | None:
    """Coordinates of the rows of ``v`` in the row lattice spanned by ``basis``."""
    return solve_left(basis, v)


def sylvester_system(blocks: Sequence[tuple[IntMatrix, IntMatrix, IntMatrix]]) -> tuple[IntMatrix, IntMatrix]:
    """Flatten constraints ``L @ X - X @ R == C`` into ``M @ vec(X) == c``.

    ``vec`` is row-major.  Every block must constrain the same n x m unknown.
    """
    if not blocks:
        raise ValueError("no constraints given")
    n = blocks[0][0].rows
    m = blocks[0][1].rows
    rows: list[list[int]] = []
    rhs: list[list[int]] = []
    for L, R, C in blocks:
        if L.shape != (n, n) or R.shape != (m, m) or C.shape != (n, m):
            raise ValueError("all blocks must constrain one n x m unknown")
        for i in range(n):
            for j in range(m):
                eq = [0] * (n * m)
                # (L X)[i][j] = sum_k L[i][k] X[k][j]
                for k in range(n):
                    if L[i, k]:
                        eq[k * m + j] += L[i, k]
                # (X R)[i][j] = sum_k X[i][k] R[k][j]
                for k in range(m):
                    if R[k, j]:
                        eq[i * m + k] -= R[k, j]
                rows.append(eq)
                rhs.append([C[i, j]])
    return IntMatrix(rows, n * m), IntMatrix(rhs, 1)


def solve_affine_system(
    blocks: Sequence[tuple[IntMatrix, IntMatrix, IntMatrix]],
) -> IntMatrix | None:
    """Integer ``X`` with ``L @ X - X @ R == C`` for every block, or None."""
    X, _ = solve_affine_system_certified(blocks)
    return X


def solve_affine_system_certified(
    blocks: Sequence[tuple[IntMatrix, IntMatrix, IntMatrix]],
) -> tuple[IntMatrix | None, Certificate | None]:
    n = blocks[0][0].rows
    m = blocks[0][1].rows
    M, c = sylvester_system(blocks)
    x, cert = _solve(M, c)
    if x is None:
        return None, cert
    flat = x.col(0)
    return IntMatrix([flat[i * m:(i + 1) * m] for i in range(n)], m), None


# lattices -----------------------------------------------------------------


def lattice_contains(basis: IntMatrix, v: Sequence[int] | IntMatrix) -> bool:
    vm = v if isinstance(v, IntMatrix) else IntMatrix([v], basis.cols)
    if basis.rows == 0:
        return vm.is_zero()
    return coordinates(basis, vm) is not None


def lattice_equal(A: IntMatrix, B: IntMatrix) -> bool:
    if A.cols != B.cols:
        raise ValueError("lattices live in different ambient spaces")
    return hnf_basis(A) == hnf_basis(B)


def lattice_sum(*gens: IntMatrix) -> IntMatrix:
    return hnf_basis(IntMatrix.vstack(*gens))


def lattice_intersect(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """HNF basis of ``rowlattice(A) & rowlattice(B)``."""
    if A.cols != B.cols:
        raise ValueError("lattices live in different ambient spaces")
    if A.rows == 0 or B.rows == 0:
        return IntMatrix((), A.cols)
    K = kernel_basis(IntMatrix.vstack(A, -B))
    if K.rows == 0:
        return IntMatrix((), A.cols)
    return hnf_basis(K[:, : A.rows] @ A)


def saturate(A: IntMatrix) -> IntMatrix:
    """Basis of ``(Q-span of rows of A) & Z^n``."""
    res = snf(A)
    r = res.rank
    if r == 0:
        return IntMatrix((), A.cols)
    Vinv = inverse(res.V)
    return hnf_basis(Vinv[:r])


def is_unimodular(A: IntMatrix) -> bool:
    return A.is_square() and abs(det(A)) == 1


def frac_solve_unique(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Rational solution of ``x @ A == b`` for ``A`` with independent rows."""
    m = len(A)
    n = len(b)
    # columns of the augmented system: unknown x (m), equations n
    M = [[Fraction(A[i][j]) for i in range(m)] + [Fraction(b[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [v / pv for v in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(M[i][m] != 0 for i in range(r, n)):
        return None
    x = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        x[c] = M[i][m]
    return x
