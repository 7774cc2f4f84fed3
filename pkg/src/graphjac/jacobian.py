"""Structure of the Jacobian group of a graph.

Jac(G) is the finite abelian group of degree-zero divisors modulo principal
divisors; its order is the number of spanning trees.  analyze() computes the
invariant-factor decomposition from the Smith normal form of the Laplacian,
extracts one generator per nontrivial factor, and caches a generalized
inverse so that pairings, element orders, and discrete logs against the
group are cheap afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

from .divisors import (
    NonZeroDegreeError,
    class_order,
    degree,
    dhar_reduce,
    is_principal,
)
from .graphs import MultiGraph
from .linalg import SmithDecomposition, determinant, invariant_factors, smith_normal_form
from .pairing import GeneralizedInverse, gen_inverse_minor, monodromy_pairing

# Above this size the Smith transforms are no longer accumulated eagerly;
# see _analyze_large for what replaces them.
_EXACT_STRUCTURE_LIMIT = 60


class NotCyclicError(ValueError):
    """The group has more than one nontrivial invariant factor."""


@dataclass(frozen=True, eq=False)
class JacobianStructure:
    """Computed structure of Jac(G).

    invariant_factors lists the nontrivial factors d1 | d2 | ...; their
    product is group_order, the number of spanning trees.  generators holds
    one degree-zero divisor per factor, in q-reduced canonical form, whose
    class has order exactly the corresponding factor.  L is the cached
    generalized inverse used for all pairing evaluations.
    """

    graph: MultiGraph
    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    group_order: int
    L: GeneralizedInverse
    is_cyclic: bool
    snf: SmithDecomposition | None = None


def spanning_tree_count(g: MultiGraph) -> int:
    """Number of spanning trees, as the determinant of a principal minor of
    the Laplacian (matrix-tree)."""
    Q = g.laplacian()
    n = g.n
    keep = list(range(n - 1))
    return determinant(Q[np.ix_(keep, keep)])


def _prime_factors(x: int) -> list[int]:
    out = []
    d = 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 1 if d == 2 else 2
    if x > 1:
        out.append(x)
    return out


def _check_generator_order(g: MultiGraph, vec: list[int], d: int) -> None:
    if class_order(g, vec) != d:
        raise AssertionError("extracted generator has the wrong order")
    if is_principal(g, [d * x for x in vec]) is None:
        raise AssertionError("invariant factor does not annihilate its generator")
    for p in _prime_factors(d):
        if is_principal(g, [(d // p) * x for x in vec]) is not None:
            raise AssertionError("generator order is a proper divisor of its factor")


def _structure_from_snf(g: MultiGraph, L: GeneralizedInverse) -> JacobianStructure:
    Q = g.laplacian()
    snf = smith_normal_form(Q)
    diag = snf.diagonal
    zeros = sum(1 for d in diag if d == 0)
    if zeros != 1:
        raise AssertionError("Laplacian of a connected graph must have corank 1")
    kappa = 1
    for d in diag:
        if d:
            kappa *= d
    if spanning_tree_count(g) != kappa:
        raise AssertionError("invariant-factor product disagrees with the matrix-tree count")
    factors = []
    gens = []
    for j, d in enumerate(diag):
        if d <= 1:
            continue
        # U·Q·V = D gives Q·V[:,j] = d_j·(U^{-1}·e_j); the class of that
        # column generates the Z/d_j component
        w = Q.dot(snf.V[:, j])
        vec = []
        for x in w:
            quo, rem = divmod(int(x), d)
            assert rem == 0
            vec.append(quo)
        assert degree(vec) == 0
        red = dhar_reduce(g, vec)
        _check_generator_order(g, red, d)
        factors.append(d)
        gens.append(tuple(red))
    structure = JacobianStructure(
        graph=g,
        invariant_factors=tuple(factors),
        generators=tuple(gens),
        group_order=kappa,
        L=L,
        is_cyclic=len(factors) <= 1,
        snf=snf,
    )
    if structure.is_cyclic and factors:
        # order-from-denominator law applied to the generator itself
        if monodromy_pairing(gens[0], gens[0], L).denominator != kappa:
            raise AssertionError("generator does not pair with full order")
    return structure


def _order_from_pairings(L: GeneralizedInverse, D) -> int:
    """Order of the class of D as the lcm of pairing denominators against the
    differences e_i - e_0, which span the degree-zero divisors.  Valid
    because the pairing is non-degenerate."""
    v = np.array([int(x) for x in D], dtype=object)
    w = L.num.dot(v)
    den = L.den
    w0 = int(w[0])
    m = 1
    for i in range(1, L.n):
        m = lcm(m, den // gcd(den, int(w[i]) - w0))
    return m


def _coprime_split(a: int, b: int) -> tuple[int, int]:
    """(alpha, beta) with alpha | a, beta | b, gcd(alpha, beta) = 1 and
    alpha * beta = lcm(a, b)."""
    target = lcm(a, b)
    alpha = 1
    rest = target
    for p in _prime_factors(target):
        pe = 1
        while rest % p == 0:
            rest //= p
            pe *= p
        if a % pe == 0:
            alpha *= pe
    return alpha, target // alpha


def _find_cyclic_generator(g: MultiGraph, L: GeneralizedInverse, kappa: int) -> list[int]:
    """Deterministic generator for a cyclic Jacobian of order kappa.

    Walks the spanning set e_i - e_0 and combines elements so that the
    accumulated order reaches the group exponent, which equals kappa for a
    cyclic group."""
    n = g.n
    best: list[int] | None = None
    best_ord = 1
    for i in range(1, n):
        h = [0] * n
        h[0] = -1
        h[i] = 1
        o = _order_from_pairings(L, h)
        if o == kappa:
            best, best_ord = h, o
            break
        merged = lcm(best_ord, o)
        if merged == best_ord:
            continue
        if best is None:
            best, best_ord = h, o
        else:
            alpha, beta = _coprime_split(best_ord, o)
            combo = [
                (best_ord // alpha) * x + (o // beta) * y for x, y in zip(best, h)
            ]
            best = dhar_reduce(g, combo)
            best_ord = alpha * beta
            assert _order_from_pairings(L, best) == best_ord
        if best_ord == kappa:
            break
    if best is None or best_ord != kappa:
        raise AssertionError("no element attains the group order; group is not cyclic")
    red = dhar_reduce(g, best)
    # order-from-denominator law plus direct annihilation checks
    if monodromy_pairing(red, red, L).denominator != kappa:
        raise AssertionError("generator does not pair with full order")
    if is_principal(g, [kappa * x for x in red]) is None:
        raise AssertionError("group order does not annihilate the generator")
    for p in _prime_factors(kappa):
        if is_principal(g, [(kappa // p) * x for x in red]) is not None:
            raise AssertionError("generator order is a proper divisor of the group order")
    return red


def _analyze_large(g: MultiGraph, L: GeneralizedInverse) -> JacobianStructure:
    """Structure computation that avoids accumulating Smith transforms.

    Invariant factors come from the transform-free reduction; the group
    order is their product, cross-checked against the minor determinant
    (exactly when the inverse was computed fraction-free, modulo the
    reconstruction primes otherwise).  A generator for the cyclic case is
    found through pairing orders; non-cyclic groups fall back to the full
    decomposition.
    """
    diag = invariant_factors(g.laplacian())
    zeros = sum(1 for d in diag if d == 0)
    if zeros != 1:
        raise AssertionError("Laplacian of a connected graph must have corank 1")
    kappa = 1
    for d in diag:
        if d:
            kappa *= d
    if L.minor_det is not None:
        if L.minor_det != kappa:
            raise AssertionError("invariant-factor product disagrees with the matrix-tree count")
    else:
        for p, res in L.det_residues:
            if kappa % p != res:
                raise AssertionError("invariant-factor product disagrees with the matrix-tree count")
    nontrivial = [d for d in diag if d > 1]
    if len(nontrivial) > 1:
        return _structure_from_snf(g, L)
    gens: tuple = ()
    if nontrivial:
        gens = (tuple(_find_cyclic_generator(g, L, kappa)),)
    return JacobianStructure(
        graph=g,
        invariant_factors=tuple(nontrivial),
        generators=gens,
        group_order=kappa,
        L=L,
        is_cyclic=True,
        snf=None,
    )


def analyze(g: MultiGraph) -> JacobianStructure:
    """Compute the full structure of Jac(G): invariant factors, generators,
    group order, and a cached generalized inverse."""
    L = gen_inverse_minor(g, g.n - 1)
    if g.n <= _EXACT_STRUCTURE_LIMIT:
        return _structure_from_snf(g, L)
    return _analyze_large(g, L)


def element_order(S: JacobianStructure, D) -> int:
    """Order of the class of D in a cyclic Jacobian, read off as the
    denominator of its pairing with the generator."""
    if degree(D) != 0:
        raise NonZeroDegreeError("element order requires a degree-zero divisor")
    if not S.is_cyclic:
        raise NotCyclicError("order-from-denominator needs a cyclic group; use order_general")
    if S.group_order == 1:
        return 1
    return monodromy_pairing(D, S.generators[0], S.L).denominator


def order_general(S: JacobianStructure, D) -> int:
    """Order of the class of D in any Jacobian: lcm of pairing denominators
    against the generators, verified by annihilation checks."""
    if degree(D) != 0:
        raise NonZeroDegreeError("element order requires a degree-zero divisor")
    m = 1
    for gen in S.generators:
        m = lcm(m, monodromy_pairing(D, gen, S.L).denominator)
    g = S.graph
    if is_principal(g, [m * int(x) for x in D]) is None:
        raise AssertionError("computed order does not annihilate the class")
    for p in _prime_factors(m):
        if is_principal(g, [(m // p) * int(x) for x in D]) is not None:
            raise AssertionError("computed order is not minimal")
    return m


def class_add(S: JacobianStructure, D1, D2) -> list[int]:
    """Canonical representative of the sum of two degree-zero classes."""
    if degree(D1) != 0 or degree(D2) != 0:
        raise NonZeroDegreeError("class arithmetic requires degree-zero divisors")
    return dhar_reduce(S.graph, [int(a) + int(b) for a, b in zip(D1, D2)])


def class_scale(S: JacobianStructure, D, k: int) -> list[int]:
    """Canonical representative of k times a degree-zero class."""
    if degree(D) != 0:
        raise NonZeroDegreeError("class arithmetic requires degree-zero divisors")
    return dhar_reduce(S.graph, [int(k) * int(x) for x in D])
