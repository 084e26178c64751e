"""Exact clique counts, per-edge clique supports and the joints number js_r."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .errors import CountOverflowError, TooLargeError
from .graph import Edge, Graph, iter_bits

INT64_MAX = 2**63 - 1
BRUTEFORCE_CAP = 10**7


@dataclass(frozen=True)
class CliqueStats:
    r: int
    total: int
    edge_support: dict[Edge, int]

    @property
    def joints(self) -> int:
        """js_r: the largest number of r-cliques sharing one edge."""
        return max(self.edge_support.values(), default=0)


def degeneracy_order(g: Graph) -> list[int]:
    """Vertices in smallest-last (degeneracy) order, ties to the lower index."""
    n = g.n
    deg = g.degrees()
    buckets: list[set[int]] = [set() for _ in range(max(deg, default=0) + 1)]
    for v, d in enumerate(deg):
        buckets[d].add(v)
    removed = [False] * n
    order = []
    lo = 0
    for _ in range(n):
        while not buckets[lo]:
            lo += 1
        v = min(buckets[lo])
        buckets[lo].discard(v)
        removed[v] = True
        order.append(v)
        for u in iter_bits(g.adj[v]):
            if not removed[u]:
                d = deg[u]
                buckets[d].discard(u)
                deg[u] = d - 1
                buckets[d - 1].add(u)
        lo = max(lo - 1, 0)
    return order


def forward_sets(g: Graph, order: list[int] | None = None) -> list[int]:
    """Per-vertex bit set of neighbors appearing later in ``order``."""
    if order is None:
        order = degeneracy_order(g)
    later = [0] * g.n
    seen = 0
    for v in reversed(order):
        later[v] = g.adj[v] & seen
        seen |= 1 << v
    return later


def _count_in(cand: int, k: int, fwd: list[int]) -> int:
    if k == 0:
        return 1
    if k == 1:
        return cand.bit_count()
    if k == 2:
        total = 0
        for w in iter_bits(cand):
            total += (cand & fwd[w]).bit_count()
        return total
    total = 0
    for w in iter_bits(cand):
        nxt = cand & fwd[w]
        if nxt.bit_count() >= k - 1:
            total += _count_in(nxt, k - 1, fwd)
    return total


def _checked(x: int) -> int:
    if x > INT64_MAX:
        raise CountOverflowError(f"clique count {x} exceeds the 64-bit range")
    return x


def count_cliques(g: Graph, r: int) -> int:
    """k_r(G), the number of r-vertex complete subgraphs."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r > g.n:
        return 0
    if r == 1:
        return g.n
    if r == 2:
        return g.edge_count()
    fwd = forward_sets(g)
    return _checked(_count_in((1 << g.n) - 1, r, fwd))


def edge_support(g: Graph, u: int, v: int, r: int, fwd: list[int] | None = None) -> int:
    """Number of r-cliques containing the edge ``{u, v}`` (0 for a non-edge)."""
    if not g.has_edge(u, v):
        return 0
    if fwd is None:
        fwd = forward_sets(g)
    return _count_in(g.adj[u] & g.adj[v], r - 2, fwd)


def clique_stats(g: Graph, r: int) -> CliqueStats:
    if r < 2:
        raise ValueError("clique_stats needs r >= 2")
    fwd = forward_sets(g)
    support = {}
    acc = 0
    for u, v in g.edges():
        s = _count_in(g.adj[u] & g.adj[v], r - 2, fwd)
        support[(u, v)] = s
        acc += s
    # every r-clique is counted once per edge it contains
    total = acc // math.comb(r, 2)
    return CliqueStats(r, _checked(total), support)


def joints_number(g: Graph, r: int) -> int:
    return clique_stats(g, r).joints


def iter_cliques_in(adj: list[int] | tuple[int, ...], cand: int, k: int) -> Iterator[tuple[int, ...]]:
    """Yield every k-clique inside the vertex set ``cand`` as an increasing tuple."""
    if k == 0:
        yield ()
        return
    for w in iter_bits(cand):
        higher = cand & adj[w] & ~((1 << (w + 1)) - 1)
        if k == 1:
            yield (w,)
        elif higher.bit_count() >= k - 1:
            for rest in iter_cliques_in(adj, higher, k - 1):
                yield (w,) + rest


def count_cliques_bruteforce(g: Graph, r: int) -> int:
    """Count r-cliques by testing every r-subset.  Independent of the fast path."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r > g.n:
        return 0
    if math.comb(g.n, r) > BRUTEFORCE_CAP:
        raise TooLargeError(f"C({g.n}, {r}) subsets exceed the cap of {BRUTEFORCE_CAP}")
    edges = g.edge_set()
    count = 0
    for sub in itertools.combinations(range(g.n), r):
        if all(p in edges for p in itertools.combinations(sub, 2)):
            count += 1
    return count
