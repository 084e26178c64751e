"""The stability engine: peel edges out of dense joints, then certify.

Given ``G`` with large spectral radius, :func:`stability_dichotomy` returns one
of two checkable certificates:

* :class:`ConditionA` -- a complete (r+1)-partite subgraph
  K_{r+1}(s, ..., s, t) of ``G``;
* :class:`ConditionB` -- an explicit edit set turning ``G`` into T_r(n).

The asymptotic constants (``c < r^{-8(r+21)(r+1)}`` and ``n > e^{1/c}``) are far
out of reach of any concrete graph, so the joint threshold, the edit budget and
the witness sizes can be overridden.  :class:`Params` keeps both the formula
defaults and the values in use.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .cliques import _count_in, clique_stats, iter_cliques_in
from .errors import ExtractionFailed
from .graph import (
    EditSet,
    Edge,
    Graph,
    apply_edits,
    edits_to_partition,
    is_turan_partition,
    iter_bits,
    make_rng,
    mask_of,
    norm_edge,
    turan_part_sizes,
)
from .multipartite import MultipartiteWitness, find_kr_s_t, verify_multipartite_witness

EXHAUSTIVE_MAX_ORDER = 16
_SNAP = 1e-9


def _ceil(x: float) -> int:
    # doubles that land a hair above an integer still ceil to that integer
    k = round(x)
    if abs(x - k) <= _SNAP * max(1.0, abs(x)):
        return int(k)
    return math.ceil(x)


# -- parameters ------------------------------------------------------------

@dataclass(frozen=True)
class Params:
    r: int
    c: float
    eps: float
    n: int
    theta: float
    b: float
    a: float
    s: int
    t: int
    joint_threshold: float
    edit_budget: int
    part_size_u: int
    edit_bound: float
    sharp_bound: float
    mindeg_goal: float
    size_goal: float
    hypothesis_window: bool
    default_joint_threshold: float
    default_edit_budget: int
    default_s: int
    default_t: int
    overrides: dict = field(default_factory=dict)


def in_hypothesis_window(r: int, c: float, eps: float, n: int) -> bool:
    """1/ln n < c < r^{-8(r+21)(r+1)} and 0 < eps < 2^{-36} r^{-24}, compared in logs."""
    if c <= 0 or eps <= 0 or n < 2:
        return False
    log_c = math.log(c)
    lower = c * math.log(n) > 1
    upper = log_c < -8 * (r + 21) * (r + 1) * math.log(r)
    eps_ok = math.log(eps) < -36 * math.log(2) - 24 * math.log(r)
    return lower and upper and eps_ok


def derived_params(
    r: int,
    c: float,
    eps: float,
    n: int,
    *,
    joint_threshold: float | None = None,
    edit_budget: int | None = None,
    s: int | None = None,
    t: int | None = None,
) -> Params:
    if r < 2:
        raise ValueError("r must be >= 2")
    if n < 3:
        raise ValueError("n must be >= 3")
    if c <= 0 or eps <= 0:
        raise ValueError("c and eps must be positive")
    overrides = {
        k: v
        for k, v in dict(joint_threshold=joint_threshold, edit_budget=edit_budget, s=s, t=t).items()
        if v is not None
    }
    theta = c ** (1 / (r + 1)) * float(r) ** (2 * r + 5)
    b = eps + math.sqrt(2 * theta)
    a = b ** (1 / 3)
    s0 = math.floor(c * math.log(n))
    if s0 < 1 and not overrides:
        raise ValueError(
            f"floor(c ln n) = {s0} < 1: the witness parts would be empty; "
            "pass overrides to run outside the hypothesis window"
        )
    t0 = _ceil(n ** (1 - math.sqrt(c)))
    jt0 = n ** (r - 1) / float(r) ** (2 * r + 5)
    eb0 = _ceil(theta * n * n)
    return Params(
        r=r,
        c=c,
        eps=eps,
        n=n,
        theta=theta,
        b=b,
        a=a,
        s=s0 if s is None else int(s),
        t=t0 if t is None else int(t),
        joint_threshold=jt0 if joint_threshold is None else float(joint_threshold),
        edit_budget=eb0 if edit_budget is None else int(edit_budget),
        part_size_u=max(0, _ceil((1 / r - 7 * (r - 1) * a) * n)),
        edit_bound=(eps ** 0.25 + c ** (1 / (8 * r + 8))) * n * n,
        sharp_bound=(theta + (7 * r * r - 3 * r) * a) * n * n,
        mindeg_goal=(1 - 1 / r - 7 * a) * n,
        size_goal=(1 - 4 * a) * n,
        hypothesis_window=in_hypothesis_window(r, c, eps, n),
        default_joint_threshold=jt0,
        default_edit_budget=eb0,
        default_s=s0,
        default_t=t0,
        overrides=overrides,
    )


# -- certificates ----------------------------------------------------------

Removal = tuple[Edge, int]


@dataclass(frozen=True)
class ConditionA:
    witness: MultipartiteWitness
    s: int
    t_achieved: int
    removals: tuple[Removal, ...] = ()
    tag = "A"


@dataclass(frozen=True)
class ConditionB:
    edits: EditSet
    edit_count: int
    bound: float
    within_bound: bool
    sharp_bound: float = math.inf
    removals: tuple[Removal, ...] = ()
    fallback: bool = False
    tag = "B"


Certificate = ConditionA | ConditionB


@dataclass
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


# -- procedure P -----------------------------------------------------------

def procedure_p(g: Graph, r: int, joint_threshold: float) -> tuple[Graph, list[Removal]]:
    """Remove edges lying in more than ``joint_threshold`` (r+1)-cliques.

    At each step the edge of largest (r+1)-clique support is removed, ties to
    the lexicographically smallest edge, until js_{r+1} <= joint_threshold.
    Supports are maintained incrementally: deleting ``uv`` only touches the
    other edges of the (r+1)-cliques through ``uv``.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    if joint_threshold < 0:
        raise ValueError("joint_threshold must be >= 0")
    k = r + 1
    support = dict(clique_stats(g, k).edge_support)
    heap = [(-s, e) for e, s in support.items() if s > joint_threshold]
    heapq.heapify(heap)
    adj = list(g.adj)
    log: list[Removal] = []
    while heap:
        neg, e = heapq.heappop(heap)
        cur = support.get(e)
        if cur is None or -neg != cur:
            continue
        u, v = e
        log.append((e, cur))
        del support[e]
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        for rest in iter_cliques_in(adj, adj[u] & adj[v], k - 2):
            clique = (u, v) + rest
            for x, y in combinations(clique, 2):
                if {x, y} == {u, v}:
                    continue
                f = norm_edge(x, y)
                sf = support[f] - 1
                support[f] = sf
                if sf > joint_threshold:
                    heapq.heappush(heap, (-sf, f))
    return Graph._trusted(g.n, adj), log


def _index_forward(adj) -> list[int]:
    # orientation by vertex index; any acyclic orientation counts each clique once
    return [a & ~((2 << v) - 1) for v, a in enumerate(adj)]


def replay_removals(g: Graph, r: int, log: Sequence[Removal], joint_threshold: float) -> Verdict:
    """Re-run a removal log on ``g``, recomputing each support from scratch."""
    adj = list(g.adj)
    for i, (e, logged) in enumerate(log):
        u, v = e
        if not (0 <= u < v < g.n) or not (adj[u] >> v) & 1:
            return Verdict(False, f"log step {i}: {e} is not an edge of the current graph")
        actual = _count_in(adj[u] & adj[v], r - 1, _index_forward(adj))
        if actual != logged:
            return Verdict(False, f"log step {i}: {e} lies in {actual} cliques, log says {logged}")
        if not actual > joint_threshold:
            return Verdict(False, f"log step {i}: support {actual} does not exceed {joint_threshold}")
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    final = Graph._trusted(g.n, adj)
    js = clique_stats(final, r + 1).joints
    if js > joint_threshold:
        return Verdict(False, f"log stops early: js_{r + 1} = {js} > {joint_threshold}")
    return Verdict(True)


# -- r-partite extraction --------------------------------------------------

def _color(adj, verts: list[int], r: int) -> list[int] | None:
    """Proper r-coloring of the subgraph on ``verts`` by backtracking, or None."""
    order = sorted(verts, key=lambda v: (-(adj[v] & mask_of(verts)).bit_count(), v))
    col: dict[int, int] = {}
    classes = [0] * r

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        # a new color is only tried once (colors are interchangeable)
        for c in range(min(used + 1, r)):
            if adj[v] & classes[c]:
                continue
            col[v] = c
            classes[c] |= 1 << v
            if rec(i + 1, max(used, c + 1)):
                return True
            classes[c] &= ~(1 << v)
            del col[v]
        return False

    if not rec(0, 0):
        return None
    return [col[v] for v in verts]


def _parts_from(verts, colors, r) -> list[tuple[int, ...]]:
    parts: list[list[int]] = [[] for _ in range(r)]
    for v, c in zip(verts, colors):
        parts[c].append(v)
    return [tuple(sorted(p)) for p in parts]


def _meets(g: Graph, verts, size_goal, mindeg_goal) -> bool:
    return len(verts) >= size_goal and len(verts) > 0 and g.induced_min_degree(verts) > mindeg_goal


def _extract_exhaustive(g: Graph, r: int, size_goal: float, mindeg_goal: float):
    n = g.n
    lo = max(1, _ceil(size_goal))
    for k in range(n, lo - 1, -1):
        for verts in combinations(range(n), k):
            verts = list(verts)
            if g.induced_min_degree(verts) <= mindeg_goal:
                continue
            colors = _color(g.adj, verts, r)
            if colors is not None:
                return _parts_from(verts, colors, r)
    return None


def _kplus_free_core(g: Graph, r: int, alive: int) -> int:
    """Delete the vertex in the most (r+1)-cliques until none remain."""
    adj = g.adj
    while True:
        sub = [a & alive for a in adj]
        counts = {}
        for clique in iter_cliques_in(sub, alive, r + 1):
            for v in clique:
                counts[v] = counts.get(v, 0) + 1
        if not counts:
            return alive
        worst = min(counts, key=lambda v: (-counts[v], v))
        alive &= ~(1 << worst)


def _local_search(adj, verts: list[int], r: int, rng, sweeps: int = 50) -> list[int]:
    """Move-vertex hill climbing on the number of within-part edges."""
    vmask = mask_of(verts)
    part_mask = [0] * r
    col = {}
    # greedy start: each vertex joins the part where it has fewest neighbors
    for v in verts:
        c = min(range(r), key=lambda p: ((adj[v] & part_mask[p]).bit_count(), p))
        col[v] = c
        part_mask[c] |= 1 << v
    for _ in range(sweeps):
        moved = False
        order = list(verts)
        rng.shuffle(order)
        for v in order:
            c = col[v]
            here = (adj[v] & vmask & part_mask[c]).bit_count()
            if here == 0:
                continue
            best = min(range(r), key=lambda p: ((adj[v] & vmask & part_mask[p]).bit_count(), p))
            if (adj[v] & vmask & part_mask[best]).bit_count() < here:
                part_mask[c] &= ~(1 << v)
                part_mask[best] |= 1 << v
                col[v] = best
                moved = True
        if not moved:
            break
    return [col[v] for v in verts]


def _extract_heuristic(g: Graph, r: int, size_goal: float, mindeg_goal: float, seed: int, restarts: int):
    adj = g.adj
    core = _kplus_free_core(g, r, (1 << g.n) - 1)
    rng = make_rng(seed)
    best = None
    for _ in range(restarts):
        verts = list(iter_bits(core))
        colors = _local_search(adj, verts, r, rng)
        col = dict(zip(verts, colors))
        masks = [0] * r
        for v, c in col.items():
            masks[c] |= 1 << v
        # drop vertices that still have a neighbor in their own part
        while True:
            bad = [(((adj[v] & masks[c]).bit_count()), v) for v, c in col.items() if adj[v] & masks[c]]
            if not bad:
                break
            _, v = max(bad, key=lambda x: (x[0], -x[1]))
            masks[col.pop(v)] &= ~(1 << v)
        # drop low-degree vertices until the min-degree goal holds
        alive = mask_of(col)
        while alive:
            degs = [((adj[v] & alive).bit_count(), v) for v in iter_bits(alive)]
            d, v = min(degs)
            if d > mindeg_goal:
                break
            alive &= ~(1 << v)
        verts = list(iter_bits(alive))
        if _meets(g, verts, size_goal, mindeg_goal):
            parts = _parts_from(verts, [col[v] for v in verts], r)
            key = (-len(verts), parts)
            if best is None or key < best[0]:
                best = (key, parts)
    return None if best is None else best[1]


def is_induced_rpartite(g: Graph, parts: Sequence[Sequence[int]]) -> bool:
    seen = set()
    for p in parts:
        m = mask_of(p)
        for v in p:
            if v in seen or g.adj[v] & m:
                return False
            seen.add(v)
    return True


def extract_rpartite(
    g: Graph,
    r: int,
    size_goal: float,
    mindeg_goal: float,
    seed: int = 0,
    restarts: int = 8,
) -> list[tuple[int, ...]] | None:
    """Find disjoint independent sets V_1..V_r whose union S has |S| >= size_goal
    and min degree of g[S] > mindeg_goal.

    Exhaustive (so ``None`` proves absence) for ``n <= 16``; otherwise greedy
    K_{r+1} elimination, local-search r-partition, then min-degree peeling.
    Parts may be empty.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    if g.n <= EXHAUSTIVE_MAX_ORDER:
        parts = _extract_exhaustive(g, r, size_goal, mindeg_goal)
    else:
        parts = _extract_heuristic(g, r, size_goal, mindeg_goal, seed, restarts)
    if parts is not None:
        verts = [v for p in parts for v in p]
        assert is_induced_rpartite(g, parts) and _meets(g, verts, size_goal, mindeg_goal)
    return parts


# -- trim and complete -----------------------------------------------------

def _assignment_cost(adj, v: int, part: int, masks: list[int]) -> int:
    """Edits needed for v's pairs with already-placed vertices if v joins ``part``."""
    placed = 0
    for m in masks:
        placed |= m
    same = masks[part]
    inside = (adj[v] & same).bit_count()
    cross = placed & ~same
    missing = (cross & ~adj[v]).bit_count()
    return inside + missing


def _polish(adj, assign: list[int], r: int, max_passes: int = 20) -> list[int]:
    """Swap pairs of vertices between parts while that lowers the edit count.

    Swaps keep every part size fixed.  The edit count of a labeling equals
    ``const + 2 * (within-part edges)``, so only within-part edges matter.
    """
    n = len(assign)
    masks = [0] * r
    for v, p in enumerate(assign):
        masks[p] |= 1 << v
    for _ in range(max_passes):
        improved = False
        for v in range(n):
            pv = assign[v]
            in_v = (adj[v] & masks[pv]).bit_count()
            if in_v == 0:
                continue
            best = (0, None)
            for w in range(n):
                pw = assign[w]
                if pw == pv:
                    continue
                in_w = (adj[w] & masks[pw]).bit_count()
                # within-part edge change if v and w trade places
                vw = 1 if (adj[v] >> w) & 1 else 0
                new_v = (adj[v] & masks[pw]).bit_count() - vw
                new_w = (adj[w] & masks[pv]).bit_count() - vw
                delta = new_v + new_w - in_v - in_w
                if delta < best[0]:
                    best = (delta, w)
            if best[1] is not None:
                w = best[1]
                pw = assign[w]
                masks[pv] ^= (1 << v) | (1 << w)
                masks[pw] ^= (1 << v) | (1 << w)
                assign[v], assign[w] = pw, pv
                improved = True
        if not improved:
            break
    return assign


def trim_and_complete(
    g0_parts: Sequence[Sequence[int]],
    g: Graph,
    params: Params,
    polish: bool = True,
) -> EditSet:
    """Edit set from ``g`` to a Turan graph built around the extracted parts.

    Each part V_i is trimmed to U_i, its ``part_size_u`` vertices with the most
    neighbors in the other parts.  The remaining vertices are then placed one
    by one into the part with spare Turan capacity where they need the fewest
    edits against the vertices already placed (leftovers of V_i first, then
    vertices outside G_0).  Finally capacity-preserving swaps lower the count.
    """
    r = params.r
    n = g.n
    u = params.part_size_u
    parts = [list(p) for p in g0_parts]
    if len(parts) != r:
        raise ValueError(f"expected {r} parts, got {len(parts)}")
    for i, p in enumerate(parts):
        if len(p) < u:
            raise ValueError(f"part {i} has {len(p)} vertices, fewer than u = {u}")
    adj = g.adj
    allmask = mask_of(v for p in parts for v in p)
    trimmed = []
    for p in parts:
        pm = mask_of(p)
        ranked = sorted(p, key=lambda v: (-(adj[v] & allmask & ~pm).bit_count(), v))
        trimmed.append(ranked[:u])

    # larger V_i receive the larger Turan capacities
    caps_sorted = turan_part_sizes(n, r)
    by_size = sorted(range(r), key=lambda i: (-len(parts[i]), i))
    caps = [0] * r
    for rank, i in enumerate(by_size):
        caps[i] = caps_sorted[rank]

    assign = [-1] * n
    masks = [0] * r
    for i, us in enumerate(trimmed):
        for v in us:
            assign[v] = i
            masks[i] |= 1 << v
    fill = [len(us) for us in trimmed]
    home = {}
    for i, p in enumerate(parts):
        for v in p:
            home[v] = i
    placed = mask_of(v for us in trimmed for v in us)
    rest_g0 = sorted(v for p in parts for v in p if not (placed >> v) & 1)
    outside = sorted(v for v in range(n) if v not in home)
    for v in rest_g0 + outside:
        options = [i for i in range(r) if fill[i] < caps[i]]
        best = min(options, key=lambda i: (_assignment_cost(adj, v, i, masks), home.get(v) != i, i))
        assign[v] = best
        masks[best] |= 1 << v
        fill[best] += 1
    if polish and n <= 1024:
        assign = _polish(adj, assign, r)
    return edits_to_partition(g, assign)


# -- the dichotomy ---------------------------------------------------------

def stability_dichotomy(
    g: Graph,
    params: Params,
    seed: int = 0,
    node_cap: int = 200_000,
) -> Certificate:
    """Run the peeling procedure and return a condition-(a) or condition-(b) certificate.

    If the peeling removes at least ``edit_budget`` edges, a
    K_{r+1}(s, ..., s, t) with t >= params.t is searched for in the original
    graph; when none is found the engine falls through to the condition-(b)
    path.  Condition (b) extracts an r-partite G_0 from the peeled graph and
    completes it to a Turan graph.  Raises :class:`ExtractionFailed` when no
    certificate can be produced.
    """
    if g.n != params.n:
        raise ValueError(f"params built for n={params.n}, graph has n={g.n}")
    r = params.r
    g_prime, log = procedure_p(g, r, params.joint_threshold)
    log = tuple(log)
    diag = {"removals": len(log), "edit_budget": params.edit_budget}
    fallback = False
    if len(log) >= params.edit_budget:
        w = None
        if params.s >= 1:
            w = find_kr_s_t(g, r + 1, params.s, node_cap=node_cap, seed=seed)
        if w is not None and len(w.parts[-1]) >= max(1, params.t):
            return ConditionA(w, params.s, len(w.parts[-1]), log)
        diag["witness"] = None if w is None else list(w.sizes)
        fallback = True
    parts = extract_rpartite(g_prime, r, params.size_goal, params.mindeg_goal, seed=seed)
    if parts is None:
        diag.update(size_goal=params.size_goal, mindeg_goal=params.mindeg_goal)
        raise ExtractionFailed("no r-partite subgraph meets the size and min-degree goals", diag)
    edits = trim_and_complete(parts, g, params)
    cnt = edits.count
    return ConditionB(
        edits=edits,
        edit_count=cnt,
        bound=params.edit_bound,
        within_bound=cnt < params.edit_bound,
        sharp_bound=params.sharp_bound,
        removals=log,
        fallback=fallback,
    )


def check_certificate(g: Graph, cert: Certificate, params: Params) -> Verdict:
    """Independently re-verify a certificate against the original graph."""
    r = params.r
    if g.n != params.n:
        return Verdict(False, "graph order does not match params")
    if isinstance(cert, ConditionA):
        w = cert.witness
        if len(w.parts) != r + 1:
            return Verdict(False, f"witness has {len(w.parts)} parts, need {r + 1}")
        if cert.s != params.s or cert.s < 1:
            return Verdict(False, f"witness part size {cert.s} differs from s = {params.s}")
        if cert.t_achieved < max(1, params.t):
            return Verdict(False, f"final part {cert.t_achieved} below t = {params.t}")
        sizes = [cert.s] * r + [cert.t_achieved]
        if not verify_multipartite_witness(g, w, sizes):
            return Verdict(False, "witness is not a complete multipartite subgraph of sizes " + str(sizes))
        if len(cert.removals) < params.edit_budget:
            return Verdict(False, "condition (a) claimed but the peeling stayed under budget")
    elif isinstance(cert, ConditionB):
        e = cert.edits
        if cert.edit_count != e.count:
            return Verdict(False, f"edit_count {cert.edit_count} != {e.count} listed edits")
        try:
            h = apply_edits(g, e)
        except ValueError as exc:
            return Verdict(False, f"edits do not apply: {exc}")
        if not is_turan_partition(h, e.part_assignment, r):
            return Verdict(False, "edited graph is not T_r(n) under the part assignment")
        if cert.bound != params.edit_bound:
            return Verdict(False, "bound differs from the params' edit bound")
        if cert.within_bound != (cert.edit_count < cert.bound):
            return Verdict(False, "within_bound flag is inconsistent")
    else:
        return Verdict(False, f"unknown certificate type {type(cert).__name__}")
    return replay_removals(g, r, cert.removals, params.joint_threshold)
