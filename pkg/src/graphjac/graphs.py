"""Loopless connected multigraphs with a fixed vertex ordering 0..n-1."""

from __future__ import annotations

from collections import deque

import numpy as np


class GraphError(ValueError):
    """Base class for graph construction and parsing failures."""


class LoopEdgeError(GraphError):
    """An edge joins a vertex to itself."""


class VertexRangeError(GraphError):
    """An edge endpoint is outside 0..n-1, or the vertex count is invalid."""


class DisconnectedError(GraphError):
    """The edge set does not connect all vertices."""


class GraphParseError(GraphError):
    """Malformed graph text."""


class MultiGraph:
    """Finite unweighted multigraph: no loops, connected, vertices 0..n-1.

    Edges are stored as multiplicities per unordered vertex pair, which is
    all the Laplacian needs.  Instances are immutable and hashable after
    construction; connectivity is checked eagerly so later stages may rely
    on it.
    """

    __slots__ = ("n", "m", "_mult", "_adj", "_degrees", "_lap", "_hash")

    def __init__(self, n: int, edges=()):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise VertexRangeError(f"vertex count must be a positive integer, got {n!r}")
        mult: dict[tuple[int, int], int] = {}
        for e in edges:
            u, v = e
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise LoopEdgeError(f"loop edge at vertex {u}")
            key = (u, v) if u < v else (v, u)
            mult[key] = mult.get(key, 0) + 1
        self._mult = mult
        self.n = n
        self.m = sum(mult.values())
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for (u, v), k in sorted(mult.items()):
            adj[u].append((v, k))
            adj[v].append((u, k))
        self._adj = tuple(tuple(a) for a in adj)
        self._degrees = tuple(sum(k for _, k in a) for a in adj)
        self._lap = None
        self._hash = hash((n, tuple(sorted(mult.items()))))
        if self._reachable_count(0) != n:
            raise DisconnectedError("graph is not connected")

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def multiplicity(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        return self._mult.get(key, 0)

    def neighbors(self, v: int) -> tuple[tuple[int, int], ...]:
        """Pairs (w, multiplicity) over the distinct neighbors of v."""
        return self._adj[v]

    def edge_multiplicities(self) -> dict[tuple[int, int], int]:
        return dict(self._mult)

    def edge_list(self) -> list[tuple[int, int]]:
        """Every edge instance, parallel edges repeated."""
        out = []
        for (u, v), k in sorted(self._mult.items()):
            out.extend([(u, v)] * k)
        return out

    def laplacian(self) -> np.ndarray:
        """Laplacian matrix Q (degree on the diagonal, minus multiplicities
        off it) as an object array of exact integers.

        The array is cached on the graph; callers must treat it as
        read-only.
        """
        if self._lap is None:
            n = self.n
            Q = np.full((n, n), 0, dtype=object)
            for v in range(n):
                Q[v, v] = self._degrees[v]
                for w, k in self._adj[v]:
                    Q[v, w] = -k
            self._lap = Q
        return self._lap

    def distances_from(self, q: int) -> list[int]:
        """BFS distance of every vertex from q."""
        dist = [-1] * self.n
        dist[q] = 0
        queue = deque([q])
        while queue:
            x = queue.popleft()
            for w, _ in self._adj[x]:
                if dist[w] < 0:
                    dist[w] = dist[x] + 1
                    queue.append(w)
        return dist

    def _reachable_count(self, start: int) -> int:
        seen = bytearray(self.n)
        seen[start] = 1
        stack = [start]
        count = 1
        while stack:
            x = stack.pop()
            for w, _ in self._adj[x]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    stack.append(w)
        return count

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.n == other.n and self._mult == other._mult

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MultiGraph(n={self.n}, m={self.m})"


def parse_graph(text: str) -> MultiGraph:
    """Parse the graph text format.

    First data line is "n m"; the next m lines are "u v" with 0-based
    endpoints.  Blank lines and lines starting with '#' are ignored;
    parallel edges repeat lines.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    data = [ln for ln in lines if ln and not ln.startswith("#")]
    if not data:
        raise GraphParseError("empty graph description")
    head = data[0].split()
    if len(head) != 2:
        raise GraphParseError(f"expected header 'n m', got {data[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphParseError(f"non-integer header {data[0]!r}") from None
    if len(data) - 1 != m:
        raise GraphParseError(f"header promises {m} edges, found {len(data) - 1}")
    edges = []
    for ln in data[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected edge 'u v', got {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphParseError(f"non-integer edge {ln!r}") from None
    return MultiGraph(n, edges)


def format_graph(g: MultiGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def load_graph(path) -> MultiGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
