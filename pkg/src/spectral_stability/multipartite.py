"""Search for complete multipartite subgraphs K(s_1, ..., s_k) of a host graph.

Containment is as a subgraph: all cross-part pairs must be edges, pairs inside
a part are unconstrained.  Small instances are solved by exact backtracking;
larger ones by a greedy common-neighborhood heuristic with seeded restarts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded
from .graph import Graph, iter_bits, make_rng

EXACT_MAX_TOTAL = 20
EXACT_MAX_ORDER = 64
NODE_CAP = 2_000_000
RESTARTS = 32


@dataclass(frozen=True)
class MultipartiteWitness:
    parts: tuple[tuple[int, ...], ...]
    regime: str = "exact"  # "exact" | "heuristic" | "budget"

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)


def verify_multipartite_witness(g: Graph, w: MultipartiteWitness, sizes: Sequence[int]) -> bool:
    parts = w.parts
    if len(parts) != len(sizes):
        return False
    if any(len(p) != s for p, s in zip(parts, sizes)):
        return False
    seen = set()
    for p in parts:
        for v in p:
            if not (0 <= v < g.n) or v in seen:
                return False
            seen.add(v)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            for u in parts[i]:
                for v in parts[j]:
                    if not g.has_edge(u, v):
                        return False
    return True


def is_exact_regime(g: Graph, total: int) -> bool:
    return total <= EXACT_MAX_TOTAL and g.n <= EXACT_MAX_ORDER


class _Search:
    """Exact backtracking over parts, each part a combination from the current pool.

    The pool after parts 1..i is the common neighborhood of every vertex chosen
    so far (a vertex is never its own neighbor, so chosen vertices drop out),
    i.e. exactly the vertices that may still go into a later part.
    """

    def __init__(self, g: Graph, sizes: Sequence[int], node_cap: int):
        self.adj = g.adj
        self.n = g.n
        self.sizes = list(sizes)
        self.node_cap = node_cap
        self.nodes = 0
        self.after = [sum(self.sizes[i + 1:]) for i in range(len(self.sizes))]

    def combos(self, pool: int, need: int, after: int, floor: int):
        """Yield ``(part, next_pool)`` with ``|next_pool| >= after``, lexicographically."""
        adj = self.adj
        stack = [((), pool & ~((1 << floor) - 1), pool)]
        while stack:
            part, cands, nxt = stack.pop()
            if len(part) == need:
                yield part, nxt
                continue
            options = []
            for v in iter_bits(cands):
                self.nodes += 1
                if self.nodes > self.node_cap:
                    raise BudgetExceeded(f"exact search exceeded {self.node_cap} nodes")
                if (cands >> (v + 1)).bit_count() < need - len(part) - 1:
                    break
                n2 = nxt & adj[v]
                if n2.bit_count() < after:
                    continue
                options.append((part + (v,), cands & ~((1 << (v + 1)) - 1), n2))
            stack.extend(reversed(options))

    def run(self, free_last: bool = False, best_t=lambda: 0):
        """Yield part lists.  With ``free_last`` the final part is the whole pool
        and only cores whose pool beats ``best_t()`` are reported."""
        k = len(self.sizes)
        fixed = k - 1 if free_last else k

        def rec(i, pool, floor, chosen):
            if i == fixed:
                if not free_last:
                    yield chosen
                elif pool.bit_count() > best_t():
                    yield chosen + [tuple(iter_bits(pool))]
                return
            need = self.sizes[i]
            after = self.after[i]
            if free_last and i == fixed - 1:
                after = max(after, best_t() + 1)
            for part, nxt in self.combos(pool, need, after, floor):
                # consecutive equal-size parts are interchangeable
                sym = part[0] + 1 if i + 1 < fixed and self.sizes[i + 1] == need else 0
                yield from rec(i + 1, nxt, sym, chosen + [part])

        yield from rec(0, (1 << self.n) - 1, 0, [])


def _exact_find(g: Graph, sizes: Sequence[int], node_cap: int):
    if sum(sizes) > g.n:
        return None
    for parts in _Search(g, sizes, node_cap).run():
        return tuple(parts)
    return None


def _greedy_part(adj, pool: int, need: int, after: int, first: int):
    part = [first]
    nxt = pool & adj[first]
    cands = pool & ~(1 << first)
    while len(part) < need:
        best, best_v = -1, -1
        for v in iter_bits(cands):
            score = (nxt & adj[v]).bit_count()
            if score > best:
                best, best_v = score, v
        if best_v < 0:
            return None
        part.append(best_v)
        cands &= ~(1 << best_v)
        nxt &= adj[best_v]
    if nxt.bit_count() < after:
        return None
    return tuple(sorted(part)), nxt


def _greedy_find(g: Graph, sizes: Sequence[int], seed: int, restarts: int, free_last: bool):
    """Seeded greedy restarts; returns every successful part list."""
    adj = g.adj
    k = len(sizes)
    after = [sum(sizes[i + 1:]) for i in range(k)]
    if free_last:
        after = [a - sizes[-1] + 1 for a in after]
    rng = make_rng(seed)
    found = []
    for rs in range(restarts):
        pool = (1 << g.n) - 1
        parts = []
        ok = True
        for i in range(k - 1):
            verts = list(iter_bits(pool))
            if not verts:
                ok = False
                break
            if rs == 0:
                first = max(verts, key=lambda v: ((adj[v] & pool).bit_count(), -v))
            else:
                first = int(verts[rng.integers(len(verts))])
            got = _greedy_part(adj, pool, sizes[i], after[i], first)
            if got is None:
                ok = False
                break
            part, pool = got
            parts.append(part)
        if not ok:
            continue
        rest = list(iter_bits(pool))
        if free_last:
            if rest:
                parts.append(tuple(rest))
                found.append(parts)
        elif len(rest) >= sizes[-1]:
            parts.append(tuple(rest[: sizes[-1]]))
            found.append(parts)
    return found


def _lexkey(parts):
    return tuple(parts)


def find_complete_multipartite(
    g: Graph,
    sizes: Sequence[int],
    node_cap: int = NODE_CAP,
    seed: int = 0,
    restarts: int = RESTARTS,
) -> MultipartiteWitness | None:
    """Find K(sizes) as a subgraph of ``g``.

    In the exact regime a ``None`` result proves absence; in the heuristic
    regime it only means the search failed.  Raises ``BudgetExceeded`` when the
    exact search hits ``node_cap``.
    """
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError(f"part sizes must be >= 1, got {sizes}")
    if sum(sizes) > g.n:
        return None
    if is_exact_regime(g, sum(sizes)):
        parts = _exact_find(g, sizes, node_cap)
        return None if parts is None else MultipartiteWitness(parts, "exact")
    found = _greedy_find(g, sizes, seed, restarts, free_last=False)
    if not found:
        return None
    best = min(found, key=_lexkey)
    return MultipartiteWitness(tuple(best), "heuristic")


def find_kr_s_t(
    g: Graph,
    r: int,
    s: int,
    node_cap: int = NODE_CAP,
    seed: int = 0,
    restarts: int = RESTARTS,
) -> MultipartiteWitness | None:
    """Find K_r(s, ..., s, t) with the final part as large as the search allows.

    The first r-1 parts have exactly ``s`` vertices; the last part is the full
    common neighborhood of that core.  In the exact regime t is maximal (ties
    to the lexicographically smallest core); when the node cap is hit the best
    witness so far is returned with regime ``"budget"``.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    if s < 1:
        raise ValueError("s must be >= 1")
    core = (r - 1) * s
    if core + 1 > g.n:
        return None
    sizes = [s] * (r - 1) + [1]
    if is_exact_regime(g, core):
        search = _Search(g, sizes, node_cap)
        best = None
        regime = "exact"
        try:
            for parts in search.run(True, lambda: len(best[-1]) if best else 0):
                best = parts
        except BudgetExceeded:
            regime = "budget"
        if best is not None and regime == "exact":
            return MultipartiteWitness(tuple(tuple(p) for p in best), regime)
        heur = _greedy_find(g, sizes, seed, restarts, free_last=True)
        cands = ([best] if best is not None else []) + heur
        if not cands:
            return None
        top = min(cands, key=lambda p: (-len(p[-1]), _lexkey(p)))
        return MultipartiteWitness(tuple(tuple(p) for p in top), "budget")
    found = _greedy_find(g, sizes, seed, restarts, free_last=True)
    if not found:
        return None
    top = min(found, key=lambda p: (-len(p[-1]), _lexkey(p)))
    return MultipartiteWitness(tuple(tuple(p) for p in top), "heuristic")
