"""Exact dense linear algebra over arbitrary-precision integers and rationals.

No floating point anywhere: determinants and inverses use fraction-free
(Bareiss) elimination, whose intermediate entries are minors of the input,
so coefficients stay as small as the answer allows.  Integer linear systems
and invariant factors go through the Smith normal form with unimodular
row/column transforms accumulated alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np


class NotSquareError(ValueError):
    """Operation requires a square matrix."""


class SingularMatrixError(ValueError):
    """Matrix has determinant zero."""


_CRT_PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
    2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943,
    2147482937, 2147482921, 2147482877, 2147482873, 2147482867, 2147482859,
    2147482819, 2147482817, 2147482811, 2147482801, 2147482763, 2147482739,
    2147482697, 2147482693, 2147482681, 2147482663, 2147482661, 2147482621,
)


def _as_int_matrix(A) -> np.ndarray:
    """Copy A into a 2-d object array of Python ints."""
    M = np.array(A, dtype=object)
    if M.ndim != 2:
        raise ValueError("expected a two-dimensional matrix")
    out = np.empty(M.shape, dtype=object)
    for i in range(M.shape[0]):
        for j in range(M.shape[1]):
            x = M[i, j]
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise TypeError(f"entry {x} is not an integer")
                x = x.numerator
            out[i, j] = int(x)
    return out


def identity_matrix(n: int) -> np.ndarray:
    I = np.full((n, n), 0, dtype=object)
    for i in range(n):
        I[i, i] = 1
    return I


def determinant(A) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    M = _as_int_matrix(A)
    n, m = M.shape
    if n != m:
        raise NotSquareError(f"determinant of a {n}x{m} matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k, k] == 0:
            below = np.nonzero(M[k + 1:, k])[0]
            if len(below) == 0:
                return 0
            r = k + 1 + int(below[0])
            M[[k, r]] = M[[r, k]]
            sign = -sign
        piv = M[k, k]
        M[k + 1:, k + 1:] = (
            piv * M[k + 1:, k + 1:] - np.outer(M[k + 1:, k], M[k, k + 1:])
        ) // prev
        M[k + 1:, k] = 0
        prev = piv
    return sign * int(M[n - 1, n - 1])


def adjugate_pair(A) -> tuple[np.ndarray, int]:
    """Return (X, d) with A·X = d·I exactly, d > 0, X integral.

    X/d is the inverse of A.  Uses Bareiss-Jordan elimination (Montante's
    scheme) on [A | I]; all divisions are exact.  Raises SingularMatrixError
    when A is singular.
    """
    A0 = _as_int_matrix(A)
    n, m = A0.shape
    if n != m:
        raise NotSquareError(f"inverse of a {n}x{m} matrix")
    if n == 0:
        return np.empty((0, 0), dtype=object), 1
    M = np.full((n, 2 * n), 0, dtype=object)
    M[:, :n] = A0
    for i in range(n):
        M[i, n + i] = 1
    prev = 1
    for k in range(n):
        if M[k, k] == 0:
            below = np.nonzero(M[k + 1:, k])[0]
            if len(below) == 0:
                raise SingularMatrixError("matrix is singular")
            r = k + 1 + int(below[0])
            M[[k, r]] = M[[r, k]]
        piv = M[k, k]
        row_k = M[k].copy()
        col = M[:, k].copy()
        col[k] = 0
        M = (piv * M - np.outer(col, row_k)) // prev
        M[k] = row_k
        prev = piv
    diag = [int(M[i, i]) for i in range(n)]
    d = diag[0]
    for v in diag[1:]:
        d = lcm(d, v)
    X = np.empty((n, n), dtype=object)
    for i in range(n):
        X[i] = M[i, n:] * (d // diag[i])
    return X, d


def _mod_inverse_det(A: np.ndarray, p: int):
    """(A^{-1} mod p, det mod p) by Gauss-Jordan over int64, or None when A
    is singular mod p.  Requires p < 2^31 so products fit in int64."""
    n = A.shape[0]
    M = np.zeros((n, 2 * n), dtype=np.int64)
    M[:, :n] = (A % p).astype(np.int64)
    for i in range(n):
        M[i, n + i] = 1
    det = 1
    for k in range(n):
        nz = np.nonzero(M[k:, k])[0]
        if len(nz) == 0:
            return None
        r = k + int(nz[0])
        if r != k:
            M[[k, r]] = M[[r, k]]
            det = (-det) % p
        piv = int(M[k, k])
        det = det * piv % p
        inv = pow(piv, -1, p)
        M[k] = M[k] * inv % p
        col = M[:, k].copy()
        col[k] = 0
        M = (M - np.outer(col, M[k])) % p
    return M[:, n:], det


def _to_object(A: np.ndarray) -> np.ndarray:
    return np.array(A.tolist(), dtype=object)


def adjugate_pair_modular(A, verify):
    """CRT-reconstructed (X, d, det_residues) with A·X = d·I.

    Inverts A modulo word-size primes and combines by Chinese remaindering;
    `verify(X, d)` must perform an exact integer check of A·X = d·I, and
    reconstruction continues with more primes until it passes, so the result
    is exact whenever one is returned.  Returns None if the prime supply
    runs out (callers fall back to fraction-free elimination).
    """
    A = _as_int_matrix(A)
    R = None
    rd = 0
    modulus = 1
    residues = []
    for p in _CRT_PRIMES:
        res = _mod_inverse_det(A, p)
        if res is None:
            continue
        inv_p, det_p = res
        adj_p = _to_object(inv_p * det_p % p)
        residues.append((p, det_p))
        if R is None:
            R = adj_p
            rd = det_p
            modulus = p
        else:
            c = pow(modulus % p, -1, p)
            R = R + modulus * (((adj_p - R) * c) % p)
            rd = rd + modulus * (((det_p - rd) * c) % p)
            modulus *= p
        half = modulus // 2
        X = np.where(R > half, R - modulus, R)
        d = rd - modulus if rd > half else rd
        if d < 0:
            X, d = -X, -d
        if d != 0 and verify(X, int(d)):
            return X, int(d), tuple(residues)
    return None


def make_product_checker(A):
    """Exact checker for A·X = d·I that exploits the sparsity of A."""
    A = _as_int_matrix(A)
    n = A.shape[0]
    rows = []
    for i in range(n):
        nz = np.nonzero(A[i])[0]
        rows.append([(int(j), int(A[i, j])) for j in nz])

    def verify(X, d):
        for r in range(n):
            acc = None
            for j, val in rows[r]:
                acc = val * X[j] if acc is None else acc + val * X[j]
            if acc is None or int(acc[r]) != d:
                return False
            if np.count_nonzero(acc) != 1:
                return False
        return True

    return verify


# Above this size adjugate_pair_auto switches from fraction-free elimination
# to the verified modular reconstruction.
EXACT_INVERSE_LIMIT = 120


def adjugate_pair_auto(A) -> tuple[np.ndarray, int, int | None, tuple]:
    """(X, d, exact_det, det_residues) with A·X = d·I, choosing the cheapest
    exact route by size.  exact_det is |det A| when the fraction-free route
    ran, else None and det_residues carries (prime, det mod prime) pairs
    from the reconstruction."""
    A = _as_int_matrix(A)
    n = A.shape[0]
    if n <= EXACT_INVERSE_LIMIT:
        X, d = adjugate_pair(A)
        return X, d, abs(determinant(A)), ()
    got = adjugate_pair_modular(A, make_product_checker(A))
    if got is None:
        X, d = adjugate_pair(A)
        return X, d, abs(determinant(A)), ()
    X, d, residues = got
    return X, d, None, residues


def invert(A) -> np.ndarray:
    """Exact inverse of a square integer or rational matrix, as Fractions."""
    M = np.array(A, dtype=object)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquareError("inverse of a non-square matrix")
    den = 1
    for x in M.flat:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    n = M.shape[0]
    B = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            B[i, j] = int(M[i, j] * den)
    X, d = adjugate_pair(B)
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = Fraction(int(X[i, j]) * den, d)
    return out


@dataclass(frozen=True, eq=False)
class SmithDecomposition:
    """U·A·V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        r, c = self.D.shape
        return [int(self.D[i, i]) for i in range(min(r, c))]


def smith_normal_form(A) -> SmithDecomposition:
    """Smith normal form with accumulated unimodular transforms."""
    M = _as_int_matrix(A)
    U = identity_matrix(M.shape[0])
    V = identity_matrix(M.shape[1])
    _smith_inplace(M, U, V)
    return SmithDecomposition(U=U, D=M, V=V)


def invariant_factors(A) -> list[int]:
    """Diagonal of the Smith form, without transform accumulation.

    Much faster than smith_normal_form on large sparse matrices, since the
    transforms are what fill in.
    """
    M = _as_int_matrix(A)
    _smith_inplace(M, None, None)
    r, c = M.shape
    return [int(M[i, i]) for i in range(min(r, c))]


def _smith_inplace(M, U, V) -> None:
    r, c = M.shape
    for s in range(min(r, c)):
        if not _move_pivot(M, U, V, s):
            break
        while True:
            piv = M[s, s]
            # clear column s below the pivot (row operations)
            q = M[s + 1:, s] // piv
            nz = np.nonzero(q)[0]
            if len(nz):
                rows = s + 1 + nz
                M[rows, :] -= np.outer(q[nz], M[s, :])
                if U is not None:
                    U[rows, :] -= np.outer(q[nz], U[s, :])
            # clear row s right of the pivot (column operations)
            q2 = M[s, s + 1:] // piv
            nz2 = np.nonzero(q2)[0]
            if len(nz2):
                cols = s + 1 + nz2
                M[:, cols] -= np.outer(M[:, s], q2[nz2])
                if V is not None:
                    V[:, cols] -= np.outer(V[:, s], q2[nz2])
            if np.count_nonzero(M[s + 1:, s]) or np.count_nonzero(M[s, s + 1:]):
                # nonzero remainders: re-pivot on the smallest of them
                _move_pivot(M, U, V, s)
                continue
            piv = M[s, s]
            if piv != 1:
                bad = np.nonzero(M[s + 1:, s + 1:] % piv)
                if len(bad[0]):
                    # fold a non-divisible row into the pivot row and redo,
                    # which drives the pivot down to the gcd
                    i = s + 1 + int(bad[0][0])
                    M[s, :] += M[i, :]
                    if U is not None:
                        U[s, :] += U[i, :]
                    continue
            break


def _move_pivot(M, U, V, s) -> bool:
    """Swap the smallest-magnitude nonzero of M[s:, s:] into (s, s), make it
    positive.  Returns False when the block is entirely zero."""
    r, c = M.shape
    best = None
    for i in range(s, r):
        row = M[i, s:]
        nz = np.nonzero(row)[0]
        if len(nz) == 0:
            continue
        vals = np.abs(row[nz])
        jloc = int(np.argmin(vals))
        v = int(vals[jloc])
        if best is None or v < best[0]:
            best = (v, i, s + int(nz[jloc]))
            if v == 1:
                break
    if best is None:
        return False
    _, bi, bj = best
    if bi != s:
        M[[s, bi]] = M[[bi, s]]
        if U is not None:
            U[[s, bi]] = U[[bi, s]]
    if bj != s:
        M[:, [s, bj]] = M[:, [bj, s]]
        if V is not None:
            V[:, [s, bj]] = V[:, [bj, s]]
    if M[s, s] < 0:
        M[s, :] = -M[s, :]
        if U is not None:
            U[s, :] = -U[s, :]
    return True


def solve_integer(A, b) -> list[int] | None:
    """Some integer x with A·x = b, or None when no integer solution exists."""
    M = _as_int_matrix(A)
    S = smith_normal_form(M)
    return solve_with_snf(S, b)


def solve_with_snf(S: SmithDecomposition, b) -> list[int] | None:
    """Solve A·x = b given a precomputed Smith decomposition of A."""
    r = S.U.shape[0]
    c = S.V.shape[0]
    vec = np.array([int(v) for v in b], dtype=object)
    if len(vec) != r:
        raise ValueError(f"right-hand side has length {len(vec)}, expected {r}")
    u = S.U.dot(vec)
    k = min(r, c)
    y = np.full(c, 0, dtype=object)
    for i in range(r):
        d = int(S.D[i, i]) if i < k else 0
        if d == 0:
            if int(u[i]) != 0:
                return None
        else:
            quo, rem = divmod(int(u[i]), d)
            if rem:
                return None
            y[i] = quo
    x = S.V.dot(y)
    return [int(v) for v in x]
