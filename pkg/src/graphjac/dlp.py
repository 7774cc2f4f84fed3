"""Discrete logarithm on the Jacobian of a graph via the monodromy pairing.

Given degree-zero divisors D and D' with the class of D' a multiple x of the
class of D, pairing both against a generator turns the problem into a linear
congruence: <D', g> = x·<D, g> in Q/Z.  Clearing denominators (the
denominator of <D, g> is exactly the order of D's class) and running the
extended Euclidean algorithm recovers x modulo ord(D).  For non-cyclic
groups one congruence per generator is collected and merged.  Either way the
per-instance cost after precomputation is a couple of matrix-vector products.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .divisors import NonZeroDegreeError, degree, dhar_reduce, equivalent
from .jacobian import JacobianStructure, NotCyclicError, order_general
from .pairing import monodromy_pairing


class NoSolutionError(Exception):
    """The target class is not a multiple of the base class."""


@dataclass(frozen=True)
class DlpInstance:
    """Base divisor D, target D', and the analyzed group they live in."""

    structure: JacobianStructure
    base: tuple[int, ...]
    target: tuple[int, ...]

    def __post_init__(self):
        n = self.structure.graph.n
        object.__setattr__(self, "base", tuple(int(x) for x in self.base))
        object.__setattr__(self, "target", tuple(int(x) for x in self.target))
        if len(self.base) != n or len(self.target) != n:
            raise ValueError("divisor length does not match the graph")
        if degree(self.base) != 0 or degree(self.target) != 0:
            raise NonZeroDegreeError("DLP inputs must have degree zero")


@dataclass(frozen=True)
class DlpSolution:
    """x with x·D ~ D', reduced modulo the order of D's class."""

    x: int
    modulus: int


def _scaled_matches(S: JacobianStructure, x: int, base, target) -> bool:
    scaled = [x * a for a in base]
    return equivalent(S.graph, scaled, list(target))


def dlp_cyclic(inst: DlpInstance) -> DlpSolution:
    """Solve the DLP in a cyclic Jacobian.

    Computes r = <D, g> = a/b and r' = <D', g>; b is ord(D), and scaling
    r' by b must give an integer c (otherwise D' lies outside <D>).  Then
    a·x = c (mod b) with gcd(a, b) = 1 pins down x mod ord(D).
    """
    S = inst.structure
    if not S.is_cyclic:
        raise NotCyclicError("Jacobian is not cyclic; use dlp_general")
    if S.group_order == 1:
        return DlpSolution(x=0, modulus=1)
    gen = S.generators[0]
    r = monodromy_pairing(inst.base, gen, S.L)
    rp = monodromy_pairing(inst.target, gen, S.L)
    a, b = r.numerator, r.denominator
    num = b * rp.numerator
    if num % rp.denominator:
        raise NoSolutionError("target order does not divide base order")
    c = num // rp.denominator
    x = c * pow(a, -1, b) % b
    if not _scaled_matches(S, x, inst.base, inst.target):
        raise NoSolutionError("target is not a multiple of the base class")
    return DlpSolution(x=x, modulus=b)


def _merge_congruence(x0: int, m0: int, x1: int, m1: int) -> tuple[int, int] | None:
    g = gcd(m0, m1)
    if (x1 - x0) % g:
        return None
    l = m0 // g * m1
    t = (x1 - x0) // g * pow(m0 // g, -1, m1 // g) % (m1 // g)
    return (x0 + m0 * t) % l, l


def dlp_general(inst: DlpInstance) -> DlpSolution:
    """Solve the DLP in any Jacobian by merging one congruence per generator.

    Each generator contributes x·<D, g_i> = <D', g_i> in Q/Z, a congruence
    modulo the denominator of <D, g_i>; the system is consistent exactly
    when D' lies in the subgroup generated by D, and its merged modulus is
    ord(D).
    """
    S = inst.structure
    x0, m0 = 0, 1
    for gen in S.generators:
        r = monodromy_pairing(inst.base, gen, S.L)
        rp = monodromy_pairing(inst.target, gen, S.L)
        a, b = r.numerator, r.denominator
        num = b * rp.numerator
        if num % rp.denominator:
            raise NoSolutionError("congruence system is inconsistent")
        c = num // rp.denominator
        t = c * pow(a, -1, b) % b
        merged = _merge_congruence(x0, m0, t, b)
        if merged is None:
            raise NoSolutionError("congruence system is inconsistent")
        x0, m0 = merged
    if not _scaled_matches(S, x0, inst.base, inst.target):
        raise NoSolutionError("target is not a multiple of the base class")
    return DlpSolution(x=x0, modulus=m0)


def verify_solution(inst: DlpInstance, sol: DlpSolution) -> bool:
    """Check x·D ~ D' through q-reduced forms, 0 <= x < modulus, and
    modulus = ord(D)."""
    S = inst.structure
    if not 0 <= sol.x < max(sol.modulus, 1):
        return False
    if sol.modulus != order_general(S, inst.base):
        return False
    diff = [sol.x * a - b for a, b in zip(inst.base, inst.target)]
    return all(v == 0 for v in dhar_reduce(S.graph, diff))
