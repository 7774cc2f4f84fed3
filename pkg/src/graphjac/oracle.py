"""Brute-force reference implementations for small groups.

Deliberately naive: full enumeration of q-reduced divisors, exhaustive
spanning-tree counting, and linear-scan discrete logs.  These are shipped
(behind size guards) so every faster computation in the package can be
cross-checked from the command line.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .divisors import dhar_reduce, dhar_unburnt
from .graphs import MultiGraph
from .jacobian import spanning_tree_count


class TooLargeError(ValueError):
    """Instance exceeds the configured brute-force bound."""


@dataclass(frozen=True, eq=False)
class GroupTable:
    """Full multiplication table of Jac(G) on q-reduced representatives."""

    graph: MultiGraph
    q: int
    elements: tuple[tuple[int, ...], ...]
    add: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]
    zero_index: int

    def index_of(self, D) -> int:
        red = tuple(dhar_reduce(self.graph, [int(x) for x in D], self.q))
        return self._index[red]

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {el: i for i, el in enumerate(self.elements)}
        )


def enumerate_group(g: MultiGraph, q: int = 0, max_order: int = 2000) -> GroupTable:
    """Enumerate all degree-zero q-reduced divisors and their addition table.

    A divisor is q-reduced when it is nonnegative off q with every
    off-q coefficient below the degree, and Dhar's fire from q consumes
    everything; the q-coefficient is forced by degree zero.  The element
    count must come out equal to the number of spanning trees.
    """
    kappa = spanning_tree_count(g)
    if kappa > max_order:
        raise TooLargeError(f"group order {kappa} exceeds bound {max_order}")
    n = g.n
    others = [v for v in range(n) if v != q]
    elements = []
    for combo in itertools.product(*(range(g.degree(v)) for v in others)):
        D = [0] * n
        for v, c in zip(others, combo):
            D[v] = c
        D[q] = -sum(combo)
        unburnt, _ = dhar_unburnt(g, D, q)
        if not unburnt:
            elements.append(tuple(D))
    if len(elements) != kappa:
        raise AssertionError(
            f"enumerated {len(elements)} q-reduced divisors, expected {kappa}"
        )
    elements.sort()
    index = {el: i for i, el in enumerate(elements)}
    add = []
    for a in elements:
        row = []
        for b in elements:
            s = dhar_reduce(g, [x + y for x, y in zip(a, b)], q)
            row.append(index[tuple(s)])
        add.append(tuple(row))
    zero = index[tuple([0] * n)]
    orders = []
    for i in range(len(elements)):
        acc = i
        o = 1
        while acc != zero:
            acc = add[acc][i]
            o += 1
        orders.append(o)
    return GroupTable(
        graph=g,
        q=q,
        elements=tuple(elements),
        add=tuple(add),
        orders=tuple(orders),
        zero_index=zero,
    )


def brute_force_dlp(table: GroupTable, D, D_prime) -> int | None:
    """Least k >= 0 with k·D ~ D', by linear scan; None if there is none."""
    base = table.index_of(D)
    target = table.index_of(D_prime)
    acc = table.zero_index
    for k in range(table.orders[base]):
        if acc == target:
            return k
        acc = table.add[acc][base]
    return None


def spanning_trees_by_enumeration(g: MultiGraph, max_edges: int = 20) -> int:
    """Count spanning trees by trying every (n-1)-subset of edge instances.

    Parallel edges are distinct edge instances, so multigraph counts come
    out right.
    """
    edges = g.edge_list()
    if len(edges) > max_edges:
        raise TooLargeError(f"{len(edges)} edges exceeds bound {max_edges}")
    n = g.n
    count = 0
    for combo in itertools.combinations(range(len(edges)), n - 1):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for idx in combo:
            u, v = edges[idx]
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            count += 1
    return count
