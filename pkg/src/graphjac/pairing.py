"""Generalized inverses of the Laplacian and the monodromy pairing.

A generalized inverse of the Laplacian Q is any matrix L with Q·L·Q = Q.
Two constructions are provided: inverting a principal minor of Q and padding
with zeros, and the Moore-Penrose pseudoinverse.  The monodromy pairing of
two degree-zero divisor classes is [D1]^T·L·[D2] mod Z, independent of the
choice of L and of the representatives; pairing_by_definition computes the
same value straight from the definition (clear one argument to a principal
divisor and sum), and is kept as an independent cross-check.

Every L is stored exactly as an integer matrix over a common positive
denominator, and the defining identity Q·L·Q = Q is verified at
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .divisors import (
    NonZeroDegreeError,
    class_order,
    degree,
    is_principal,
    minor_adjugate,
)
from .graphs import MultiGraph


@dataclass(frozen=True, eq=False)
class GeneralizedInverse:
    """Exact n x n matrix L = num/den with Q·L·Q = Q.

    minor_det holds the determinant of the inverted minor when it was
    computed fraction-free; det_residues carries (prime, det mod prime)
    pairs when the modular route ran instead.  Either one lets the group
    structure computation cross-check the matrix-tree count.
    """

    num: np.ndarray
    den: int
    provenance: str
    n: int
    minor_det: int | None = None
    det_residues: tuple[tuple[int, int], ...] = ()

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.num[i, j]), self.den)

    def as_fractions(self) -> np.ndarray:
        out = np.empty((self.n, self.n), dtype=object)
        for i in range(self.n):
            for j in range(self.n):
                out[i, j] = Fraction(int(self.num[i, j]), self.den)
        return out


def _laplacian_times(g: MultiGraph, M: np.ndarray) -> np.ndarray:
    """Q·M using the adjacency structure; O(m·n) instead of O(n^3)."""
    n = g.n
    out = np.empty((n, n), dtype=object)
    for v in range(n):
        acc = g.degree(v) * M[v]
        for w, k in g.neighbors(v):
            acc = acc - k * M[w]
        out[v] = acc
    return out


def _times_laplacian(g: MultiGraph, M: np.ndarray) -> np.ndarray:
    # Q is symmetric, so M·Q = (Q·M^T)^T
    return _laplacian_times(g, M.T.copy()).T.copy()


def _check_generalized_inverse(g: MultiGraph, num: np.ndarray, den: int) -> None:
    lhs = _times_laplacian(g, _laplacian_times(g, num))
    rhs = g.laplacian() * den
    if not np.array_equal(lhs, rhs):
        raise AssertionError("constructed matrix is not a generalized inverse")


def gen_inverse_minor(g: MultiGraph, i: int, method: str = "auto") -> GeneralizedInverse:
    """Generalized inverse from the i-th principal minor of the Laplacian.

    Q_i (Q with row and column i deleted) is invertible for a connected
    graph; its inverse padded with a zero row and column at position i
    satisfies Q·L·Q = Q.
    """
    n = g.n
    if not 0 <= i < n:
        raise ValueError(f"vertex index {i} out of range")
    Q = g.laplacian()
    keep = [v for v in range(n) if v != i]
    Qi = Q[np.ix_(keep, keep)]
    if method == "auto":
        X, d, minor_det, residues = minor_adjugate(g, i)
    elif method == "exact":
        X, d = linalg.adjugate_pair(Qi)
        minor_det, residues = abs(linalg.determinant(Qi)), ()
    elif method == "modular":
        got = linalg.adjugate_pair_modular(Qi, linalg.make_product_checker(Qi))
        if got is None:
            raise AssertionError("modular reconstruction ran out of primes")
        X, d, residues = got
        minor_det = None
    else:
        raise ValueError(f"unknown method {method!r}")
    num = np.full((n, n), 0, dtype=object)
    num[np.ix_(keep, keep)] = X
    L = GeneralizedInverse(
        num=num, den=int(d), provenance=f"minor:{i}", n=n,
        minor_det=minor_det, det_residues=residues,
    )
    _check_generalized_inverse(g, L.num, L.den)
    return L


def moore_penrose(g: MultiGraph, method: str = "auto") -> GeneralizedInverse:
    """Moore-Penrose pseudoinverse Q+ = (Q + J/n)^{-1} - J/n (J all-ones).

    Satisfies Q·Q+ = Q+·Q = I - J/n and Q+·Q·Q+ = Q+ on a connected graph.
    """
    n = g.n
    Q = g.laplacian()
    B = n * Q + np.full((n, n), 1, dtype=object)

    def verify(X, d):
        # B·X = n·(Q·X) + J·X, and J·X is the column sums tiled
        QX = _laplacian_times(g, X)
        colsums = X.sum(axis=0)
        for r in range(n):
            row = n * QX[r] + colsums
            if int(row[r]) != d:
                return False
            if np.count_nonzero(row) != 1:
                return False
        return True

    if method == "exact" or (method == "auto" and n <= linalg.EXACT_INVERSE_LIMIT):
        X, d = linalg.adjugate_pair(B)
    else:
        got = linalg.adjugate_pair_modular(B, verify)
        if got is None:
            X, d = linalg.adjugate_pair(B)
        else:
            X, d, _ = got
    # (Q + J/n)^{-1} = n·X/d, so Q+ = n·X/d - J/n = (n^2·X - d·J) / (n·d)
    num = n * n * X - d * np.full((n, n), 1, dtype=object)
    L = GeneralizedInverse(num=num, den=n * int(d), provenance="moore-penrose", n=n)
    _check_generalized_inverse(g, L.num, L.den)
    return L


def monodromy_pairing(D1, D2, L: GeneralizedInverse) -> Fraction:
    """[D1]^T·L·[D2] mod Z, canonicalized into [0, 1).

    Both divisors must have degree zero; the value then depends only on the
    divisor classes and not on the choice of generalized inverse.
    """
    if len(D1) != L.n or len(D2) != L.n:
        raise ValueError("divisor length does not match the inverse")
    if degree(D1) != 0 or degree(D2) != 0:
        raise NonZeroDegreeError("monodromy pairing requires degree-zero divisors")
    v2 = np.array([int(x) for x in D2], dtype=object)
    w = L.num.dot(v2)
    s = sum(int(a) * int(b) for a, b in zip(D1, w))
    return Fraction(s, L.den) % 1


def pairing_by_definition(g: MultiGraph, D1, D2) -> Fraction:
    """The pairing computed from its definition, as an independent oracle.

    Finds the least m2 with m2·D2 principal, solves div(f2) = m2·D2, and
    returns (1/m2)·sum_v D1(v)·f2(v) mod Z.
    """
    if len(D1) != g.n or len(D2) != g.n:
        raise ValueError("divisor length mismatch")
    if degree(D1) != 0 or degree(D2) != 0:
        raise NonZeroDegreeError("pairing requires degree-zero divisors")
    m2 = class_order(g, D2)
    f2 = is_principal(g, [m2 * int(x) for x in D2])
    assert f2 is not None
    s = sum(int(a) * int(b) for a, b in zip(D1, f2))
    return Fraction(s, m2) % 1


def format_pairing(value: Fraction) -> str:
    """Serialize a pairing value as "p/q" in lowest terms, 0 <= p < q."""
    return f"{value.numerator}/{value.denominator}"
