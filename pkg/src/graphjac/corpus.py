"""Graph families, the built-in verification corpus, and seeded DLP
instances."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .divisors import dhar_reduce
from .graphs import MultiGraph
from .jacobian import JacobianStructure, analyze, order_general


def cycle_graph(k: int) -> MultiGraph:
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return MultiGraph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> MultiGraph:
    if k < 2:
        raise ValueError("complete graph needs at least 2 vertices")
    return MultiGraph(k, list(itertools.combinations(range(k), 2)))


def banana_graph(m: int) -> MultiGraph:
    """Two vertices joined by m parallel edges."""
    if m < 1:
        raise ValueError("banana graph needs at least one edge")
    return MultiGraph(2, [(0, 1)] * m)


def wheel_graph(rim: int) -> MultiGraph:
    """A rim cycle of the given length, every rim vertex joined to a hub."""
    if rim < 3:
        raise ValueError("wheel needs a rim of at least 3")
    hub = rim
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, hub) for i in range(rim)]
    return MultiGraph(rim + 1, edges)


def random_connected_graph(k: int, rng: random.Random, extra: int | None = None) -> MultiGraph:
    """Random connected multigraph: a random spanning tree plus extra edges."""
    if k < 2:
        raise ValueError("need at least 2 vertices")
    if extra is None:
        extra = max(1, k // 2)
    order = list(range(k))
    rng.shuffle(order)
    edges = [(order[i], order[rng.randrange(i)]) for i in range(1, k)]
    for _ in range(extra):
        u = rng.randrange(k)
        v = rng.randrange(k - 1)
        if v >= u:
            v += 1
        edges.append((u, v))
    return MultiGraph(k, edges)


def random_zero_sum_divisor(n: int, rng: random.Random, bound: int = 4) -> list[int]:
    """Random degree-zero divisor with coefficients in [-bound, bound]."""
    if n == 1:
        return [0]
    while True:
        D = [rng.randint(-bound, bound) for _ in range(n - 1)]
        last = -sum(D)
        if abs(last) <= bound:
            D.append(last)
            return D


@lru_cache(maxsize=1)
def small_connected_multigraphs(max_n: int = 4, max_m: int = 6) -> tuple[MultiGraph, ...]:
    """Every labeled connected multigraph with at most max_n vertices and
    max_m edges."""
    out = [MultiGraph(1, [])]
    for n in range(2, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mults in itertools.product(range(max_m + 1), repeat=len(pairs)):
            if not n - 1 <= sum(mults) <= max_m:
                continue
            edges = []
            for (u, v), k in zip(pairs, mults):
                edges.extend([(u, v)] * k)
            try:
                out.append(MultiGraph(n, edges))
            except ValueError:
                continue
    return tuple(out)


@lru_cache(maxsize=1)
def builtin_corpus() -> tuple[tuple[str, MultiGraph], ...]:
    """The desk-scale corpus: all connected multigraphs with n <= 4 and
    m <= 6, plus C3..C8, K4, K5, and B2..B6."""
    named: list[tuple[str, MultiGraph]] = []
    for i, g in enumerate(small_connected_multigraphs()):
        named.append((f"small-{i:03d}-n{g.n}m{g.m}", g))
    for k in range(3, 9):
        named.append((f"C{k}", cycle_graph(k)))
    named.append(("K4", complete_graph(4)))
    named.append(("K5", complete_graph(5)))
    for m in range(2, 7):
        named.append((f"B{m}", banana_graph(m)))
    return tuple(named)


_FAMILIES = ("cycle", "complete", "banana", "wheel", "random")


def family_graph(family: str, size: int, rng: random.Random | None = None) -> MultiGraph:
    if family == "cycle":
        return cycle_graph(size)
    if family == "complete":
        return complete_graph(size)
    if family == "banana":
        return banana_graph(size)
    if family == "wheel":
        return wheel_graph(size)
    if family == "random":
        if rng is None:
            raise ValueError("the random family needs an rng")
        return random_connected_graph(size, rng)
    raise ValueError(f"unknown family {family!r}; choose from {_FAMILIES}")


def make_dlp_instance(
    family: str,
    size: int,
    seed,
    require_cyclic: bool = False,
    coeff_bound: int = 4,
) -> dict:
    """Deterministic DLP instance: graph, base divisor, secret x, and the
    reduced target x·base.

    With require_cyclic the random family redraws until the Jacobian is
    cyclic; fixed families are returned as-is and the caller picks sizes.
    """
    rng = random.Random(f"{family}/{size}/{seed}")
    structure: JacobianStructure | None = None
    for _ in range(200):
        g = family_graph(family, size, rng)
        S = analyze(g)
        if S.group_order > 1 and (not require_cyclic or S.is_cyclic):
            structure = S
            break
        if family != "random":
            raise ValueError(
                f"family {family} at size {size} is "
                + ("non-cyclic" if S.group_order > 1 else "trivial")
            )
    if structure is None:
        raise ValueError("no suitable random graph found")
    g = structure.graph
    while True:
        base = random_zero_sum_divisor(g.n, rng, coeff_bound)
        modulus = order_general(structure, base)
        if modulus > 1:
            break
    secret = rng.randrange(modulus)
    target = dhar_reduce(g, [secret * c for c in base])
    return {
        "family": family,
        "size": size,
        "seed": seed,
        "graph": g,
        "structure": structure,
        "base": base,
        "target": target,
        "secret": secret,
        "modulus": modulus,
    }
