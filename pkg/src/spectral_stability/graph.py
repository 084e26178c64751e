"""Undirected simple graphs stored as per-vertex neighbor bit sets.

Vertex ``v``'s neighborhood is a Python ``int`` whose bit ``u`` is set iff
``{u, v}`` is an edge.  Graph values are immutable; every editing operation
returns a new graph.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidEditError, TooLargeError

MAX_ORDER = 4096
BRUTEFORCE_MAX_ORDER = 12

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    __slots__ = ("_n", "_adj", "_m")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 0 or n > MAX_ORDER:
            raise ValueError(f"graph order must be in [0, {MAX_ORDER}], got {n}")
        if len(adj) != n:
            raise ValueError("adjacency length does not match n")
        full = (1 << n) - 1
        adj = tuple(int(a) for a in adj)
        for v, a in enumerate(adj):
            if a & ~full:
                raise ValueError(f"vertex {v} has a neighbor out of range")
            if (a >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(a):
                if not (adj[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
        self._n = n
        self._adj = adj
        self._m = sum(a.bit_count() for a in adj) // 2

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        g = object.__new__(cls)
        g._n = n
        g._adj = tuple(adj)
        g._m = sum(a.bit_count() for a in g._adj) // 2
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        if n < 0 or n > MAX_ORDER:
            raise ValueError(f"graph order must be in [0, {MAX_ORDER}], got {n}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(n, adj)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, ())

    @property
    def n(self) -> int:
        return self._n

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    def __len__(self) -> int:
        return self._n

    def edge_count(self) -> int:
        return self._m

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self._adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edges(self) -> list[Edge]:
        """All edges as sorted ``(u, v)`` pairs with ``u < v``."""
        out = []
        for u, a in enumerate(self._adj):
            for v in iter_bits(a >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def without_edges(self, edges: Iterable[Edge]) -> "Graph":
        adj = list(self._adj)
        for u, v in edges:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph._trusted(self._n, adj)

    def with_edges(self, edges: Iterable[Edge]) -> "Graph":
        adj = list(self._adj)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph._trusted(self._n, adj)

    def induced_min_degree(self, vertices: Iterable[int]) -> int:
        """Minimum degree of the subgraph induced by ``vertices`` (0 if empty)."""
        vs = list(vertices)
        m = mask_of(vs)
        return min(((self._adj[v] & m).bit_count() for v in vs), default=0)

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self._n, self._n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


@dataclass(frozen=True)
class EditSet:
    """Edge additions and removals plus the vertex-to-part labeling they target."""

    additions: frozenset[Edge] = frozenset()
    removals: frozenset[Edge] = frozenset()
    part_assignment: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "additions", frozenset(norm_edge(*e) for e in self.additions))
        object.__setattr__(self, "removals", frozenset(norm_edge(*e) for e in self.removals))
        object.__setattr__(self, "part_assignment", tuple(int(p) for p in self.part_assignment))
        if self.additions & self.removals:
            raise InvalidEditError("an edge is both added and removed")

    @property
    def count(self) -> int:
        return len(self.additions) + len(self.removals)


# -- constructors ----------------------------------------------------------

def turan_part_sizes(n: int, r: int) -> list[int]:
    """Part sizes of T_r(n), larger parts first."""
    if r < 1 or r > n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    q, rem = divmod(n, r)
    return [q + 1] * rem + [q] * (r - rem)


def turan_edge_count(n: int, r: int) -> int:
    sizes = turan_part_sizes(n, r)
    return (n * n - sum(s * s for s in sizes)) // 2


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """K(s_1, ..., s_k) with parts on contiguous vertex ranges."""
    sizes = list(sizes)
    if not sizes:
        raise ValueError("need at least one part")
    if any(s < 1 for s in sizes):
        raise ValueError(f"part sizes must be >= 1, got {sizes}")
    n = sum(sizes)
    full = (1 << n) - 1
    adj = []
    start = 0
    for s in sizes:
        part = ((1 << s) - 1) << start
        adj.extend([full & ~part] * s)
        start += s
    return Graph._trusted(n, adj)


def turan_graph(n: int, r: int) -> Graph:
    return complete_multipartite(turan_part_sizes(n, r))


def turan_assignment(n: int, r: int) -> tuple[int, ...]:
    """Canonical part label of every vertex of ``turan_graph(n, r)``."""
    out = []
    for i, s in enumerate(turan_part_sizes(n, r)):
        out.extend([i] * s)
    return tuple(out)


def make_rng(seed: int) -> np.random.Generator:
    """Seeded PCG64 generator; the same seed gives the same stream everywhere."""
    return np.random.Generator(np.random.PCG64(seed))


def random_graph_fixed_edges(n: int, m: int, seed: int) -> Graph:
    """Uniformly random graph with exactly ``m`` edges (G(n, m))."""
    pairs = n * (n - 1) // 2
    if m < 0 or m > pairs:
        raise ValueError(f"m={m} outside [0, {pairs}] for n={n}")
    rng = make_rng(seed)
    picks = np.sort(rng.choice(pairs, size=m, replace=False, shuffle=False))
    rows = np.cumsum(np.arange(n - 1, 0, -1))  # rows[u] = first index of row u+1
    us = np.searchsorted(rows, picks, side="right")
    starts = np.concatenate(([0], rows))[us]
    vs = us + 1 + (picks - starts)
    return Graph.from_edges(n, zip(us.tolist(), vs.tolist()))


def random_graph_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p)."""
    rng = make_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


# -- edits -----------------------------------------------------------------

def check_edits(g: Graph, edits: EditSet) -> None:
    for u, v in edits.additions:
        if not (0 <= u < v < g.n):
            raise InvalidEditError(f"addition ({u}, {v}) out of range")
        if g.has_edge(u, v):
            raise InvalidEditError(f"addition ({u}, {v}) is already an edge")
    for u, v in edits.removals:
        if not (0 <= u < v < g.n):
            raise InvalidEditError(f"removal ({u}, {v}) out of range")
        if not g.has_edge(u, v):
            raise InvalidEditError(f"removal ({u}, {v}) is not an edge")


def apply_edits(g: Graph, edits: EditSet) -> Graph:
    check_edits(g, edits)
    return g.without_edges(edits.removals).with_edges(edits.additions)


def edits_to_partition(g: Graph, assignment: Sequence[int]) -> EditSet:
    """Edits turning ``g`` into the complete multipartite graph of ``assignment``."""
    n = g.n
    if len(assignment) != n:
        raise ValueError("assignment length does not match graph order")
    masks: dict[int, int] = {}
    for v, p in enumerate(assignment):
        masks[p] = masks.get(p, 0) | (1 << v)
    full = (1 << n) - 1
    adds, rems = [], []
    for u in range(n):
        same = masks[assignment[u]]
        higher = full & ~((1 << (u + 1)) - 1)
        a = g.adj[u]
        for v in iter_bits(a & same & higher):
            rems.append((u, v))
        for v in iter_bits(~a & ~same & higher):
            adds.append((u, v))
    return EditSet(frozenset(adds), frozenset(rems), tuple(assignment))


def is_turan_partition(g: Graph, assignment: Sequence[int], r: int) -> bool:
    """True iff ``g`` is complete r-partite along ``assignment`` with Turan part sizes."""
    n = g.n
    if len(assignment) != n or n < r:
        return False
    if any(not (0 <= p < r) for p in assignment):
        return False
    counts = [0] * r
    for p in assignment:
        counts[p] += 1
    if sorted(counts, reverse=True) != turan_part_sizes(n, r):
        return False
    masks = [0] * r
    for v, p in enumerate(assignment):
        masks[p] |= 1 << v
    full = (1 << n) - 1
    return all(g.adj[v] == full & ~masks[p] for v, p in enumerate(assignment))


def min_edit_to_turan_bruteforce(g: Graph, r: int) -> tuple[int, EditSet]:
    """Exhaustive minimum labeled edit distance from ``g`` to T_r(n).

    Every assignment of the vertices to r parts with the Turan part sizes is
    tried (parts of equal size are interchangeable, so only one labeling per
    partition is visited).  The first minimum in enumeration order wins.
    """
    n = g.n
    if n > BRUTEFORCE_MAX_ORDER:
        raise TooLargeError(f"brute-force edit distance limited to n <= {BRUTEFORCE_MAX_ORDER}")
    caps = turan_part_sizes(n, r)
    edges = g.edge_set()
    all_pairs = list(itertools.combinations(range(n), 2))
    best: list = [math.inf, None]
    assign = [-1] * n
    fill = [0] * r

    def cost() -> int:
        target = {(u, v) for u, v in all_pairs if assign[u] != assign[v]}
        return len(target ^ edges)

    def rec(v: int) -> None:
        if v == n:
            c = cost()
            if c < best[0]:
                best[0], best[1] = c, tuple(assign)
            return
        seen_empty = set()
        for p in range(r):
            if fill[p] == caps[p]:
                continue
            if fill[p] == 0:
                if caps[p] in seen_empty:
                    continue
                seen_empty.add(caps[p])
            assign[v] = p
            fill[p] += 1
            rec(v + 1)
            fill[p] -= 1
            assign[v] = -1

    rec(0)
    edits = edits_to_partition(g, best[1])
    return int(best[0]), edits
