"""Independent reference computations for checking the library.

Nothing here imports metad2.  Matrices are plain lists of int rows.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def frac_rank(A: list[list[int]]) -> int:
    """Rank over Q by Fraction Gaussian elimination."""
    M = [[Fraction(v) for v in row] for row in A]
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, len(M)):
            f = M[i][c] / M[r][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def frac_det(A: list[list[int]]) -> int:
    n = len(A)
    M = [[Fraction(v) for v in row] for row in A]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    assert d.denominator == 1
    return int(d)


def gcd_echelon(A: list[list[int]], ncols: int) -> list[list[int]]:
    """Row echelon basis of the row lattice by repeated gcd steps.

    Uses only "subtract q times a row" and swaps, with the Euclidean
    algorithm run on pairs of rows, then reduces entries above pivots.
    Returns the canonical Hermite basis (positive pivots, entries above a
    pivot in [0, pivot)).
    """
    rows = [list(r) for r in A if any(r)]
    out: list[list[int]] = []
    for c in range(ncols):
        live = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            small = live[0]
            nxt = []
            for r in live[1:]:
                q = r[c] // small[c]
                r = [a - q * b for a, b in zip(r, small)]
                if r[c] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = [small] + nxt
        if live:
            piv = live[0]
            if piv[c] < 0:
                piv = [-v for v in piv]
            out.append(piv)
        rows = [r for r in rest if any(r)]
    # reduce above pivots; row i only touches columns from its pivot on
    for i in range(len(out)):
        c = next(j for j, v in enumerate(out[i]) if v)
        for k in range(i):
            q = out[k][c] // out[i][c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], out[i])]
    return out


def in_row_lattice(basis: list[list[int]], v: list[int]) -> bool:
    """Membership via the unique rational coordinates on an independent basis."""
    if not basis:
        return not any(v)
    m = len(basis)
    n = len(v)
    aug = [[Fraction(basis[i][j]) for i in range(m)] + [Fraction(v[j])] for j in range(n)]
    r = 0
    piv = []
    for c in range(m):
        p = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        aug[r] = [x / aug[r][c] for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
    if any(aug[i][m] != 0 for i in range(r, n)):
        return False
    return all(aug[i][m].denominator == 1 for i in range(r))


def determinantal_divisors(A: list[list[int]]) -> list[int]:
    """d_k = gcd of all k x k minors, for k = 1..min(m, n), stopping at zero."""
    m, n = len(A), len(A[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, frac_det([[A[i][j] for j in cs] for i in rs]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        out.append(g)
    return out


def snf_divisors_oracle(A: list[list[int]]) -> list[int]:
    """Nonzero invariant factors from the determinantal divisors."""
    dk = determinantal_divisors(A)
    prev = 1
    out = []
    for d in dk:
        out.append(d // prev)
        prev = d
    return out


def matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
