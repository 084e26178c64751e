import dataclasses
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_stability.cliques import clique_stats, count_cliques
from spectral_stability.errors import ExtractionFailed
from spectral_stability.graph import (
    EditSet,
    Graph,
    apply_edits,
    complete_multipartite,
    is_turan_partition,
    min_edit_to_turan_bruteforce,
    random_graph_gnp,
    turan_graph,
)
from spectral_stability.multipartite import MultipartiteWitness
from spectral_stability.spectral import spectral_radius
from spectral_stability.stability import (
    ConditionA,
    ConditionB,
    check_certificate,
    derived_params,
    extract_rpartite,
    in_hypothesis_window,
    is_induced_rpartite,
    procedure_p,
    stability_dichotomy,
    trim_and_complete,
)

from conftest import complete, graphs

mpmath.mp.dps = 50


def relaxed(n, r=2, **kw):
    kw.setdefault("s", 1)
    kw.setdefault("t", 1)
    kw.setdefault("joint_threshold", 1)
    kw.setdefault("edit_budget", 10**9)
    return derived_params(r, 1e-40, 1e-3, n, **kw)


# -- derived_params --------------------------------------------------------

def test_params_tiny_c():
    p = derived_params(2, 1e-30, 1e-12, 100, s=1)
    c, eps = mpmath.mpf("1e-30"), mpmath.mpf("1e-12")
    theta = mpmath.cbrt(c) * 2**9
    a = mpmath.cbrt(eps + mpmath.sqrt(2 * theta))
    assert p.theta == pytest.approx(float(theta), rel=1e-12)
    assert p.theta == pytest.approx(5.12e-8, rel=1e-12)
    assert math.sqrt(2 * p.theta) == pytest.approx(3.2e-4, rel=1e-12)
    assert p.a == pytest.approx(float(a), rel=1e-12)
    assert p.a == pytest.approx(6.840e-2, abs=5e-5)
    assert p.b == pytest.approx(float(eps + mpmath.sqrt(2 * theta)), rel=1e-12)


def test_params_override_regime():
    p = derived_params(2, 0.5, 0.1, 100, joint_threshold=3)
    assert p.s == 2 == math.floor(float(mpmath.mpf("0.5") * mpmath.log(100)))
    assert float(mpmath.power(100, 1 - mpmath.sqrt(mpmath.mpf("0.5")))) == pytest.approx(3.853, abs=1e-3)
    assert p.t == 4
    assert not p.hypothesis_window
    assert p.joint_threshold == 3 and p.default_joint_threshold == pytest.approx(100 / 2**9)


def test_params_formulas():
    r, c, eps, n = 3, 1e-9, 1e-4, 500
    p = derived_params(r, c, eps, n, s=1)
    theta = c ** (1 / 4) * 3**11
    a = (eps + math.sqrt(2 * theta)) ** (1 / 3)
    assert p.theta == pytest.approx(theta)
    assert p.a == pytest.approx(a)
    assert p.part_size_u == max(0, math.ceil((1 / 3 - 14 * a) * n))
    assert p.edit_bound == pytest.approx((eps**0.25 + c ** (1 / 32)) * n * n)
    assert p.sharp_bound == pytest.approx((theta + (63 - 9) * a) * n * n)
    assert p.mindeg_goal == pytest.approx((2 / 3 - 7 * a) * n)
    assert p.size_goal == pytest.approx((1 - 4 * a) * n)
    assert p.edit_budget == math.ceil(theta * n * n)
    assert p.joint_threshold == pytest.approx(n**2 / 3**11)


def test_params_errors():
    with pytest.raises(ValueError):
        derived_params(2, 1e-30, 1e-12, 100)  # floor(c ln n) = 0, no overrides
    with pytest.raises(ValueError):
        derived_params(1, 0.5, 0.1, 100)
    with pytest.raises(ValueError):
        derived_params(2, 0.5, 0.1, 2)
    with pytest.raises(ValueError):
        derived_params(2, -1, 0.1, 100)


def test_hypothesis_window():
    assert not in_hypothesis_window(2, 0.5, 0.1, 100)
    # r = 2 needs c < 2^-552, so c ln n > 1 needs ln n > 2^552: no concrete n qualifies
    assert not in_hypothesis_window(2, 2.0**-553, 2.0**-61, 10**300)
    # r = 3 limit 3^-768 underflows a double; the comparison is done in logs
    assert 3.0**-768 == 0.0
    assert not in_hypothesis_window(3, 1e-300, 1e-30, 10**300)
    assert not in_hypothesis_window(2, 0.5, 2.0**-59, 10**300)


# -- procedure P -----------------------------------------------------------

def test_p_examples(k4):
    g2, log = procedure_p(turan_graph(8, 2), 2, 0)
    assert log == [] and g2 == turan_graph(8, 2)
    g2, log = procedure_p(k4, 2, 1)
    assert log == [((0, 1), 2), ((2, 3), 2)]
    assert g2.edge_set() == {(0, 2), (0, 3), (1, 2), (1, 3)}
    assert clique_stats(g2, 3).joints == 0
    g2, log = procedure_p(complete(5), 2, 10)
    assert log == []


def test_p_k4_step_by_step(k4):
    # brute-force triangle supports after every removal
    _, log = procedure_p(k4, 2, 1)
    g = k4
    for e, s in log:
        sup = clique_stats(g, 3).edge_support
        top = max(sup.values())
        assert s == sup[e] == top and e == min(f for f, v in sup.items() if v == top)
        g = g.without_edges([e])


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=3, max_n=11), st.sampled_from([2, 3]), st.sampled_from([0, 1, 2, 5]))
def test_p_contracts(g, r, thr):
    g2, log = procedure_p(g, r, thr)
    assert clique_stats(g2, r + 1).joints <= thr
    assert all(s > thr for _, s in log)
    assert g2 == g.without_edges([e for e, _ in log])
    assert g2.edge_count() == g.edge_count() - len(log)
    total = sum(s for _, s in log)
    assert total <= count_cliques(g, r + 1)
    if log:
        assert len(log) * thr < total
    drop = spectral_radius(g).mu - spectral_radius(g2).mu
    assert drop <= math.sqrt(2 * len(log)) + 1e-6


# -- extraction ------------------------------------------------------------

def test_extract_examples(k4):
    parts = extract_rpartite(turan_graph(8, 2), 2, 8, 3.9)
    assert sorted(parts) == [(0, 1, 2, 3), (4, 5, 6, 7)]
    assert extract_rpartite(k4, 2, 4, 0) is None
    parts = extract_rpartite(k4, 2, 2, 0.5)
    assert sorted(len(p) for p in parts) == [1, 1]


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=3, max_n=9), st.sampled_from([2, 3]))
def test_extract_exhaustive_is_exact(g, r):
    import itertools

    size_goal, mindeg_goal = g.n * 0.6, 0.0
    parts = extract_rpartite(g, r, size_goal, mindeg_goal)

    def colorable(vs):
        for col in itertools.product(range(r), repeat=len(vs)):
            c = dict(zip(vs, col))
            if all(c[u] != c[v] for u in vs for v in g.neighbors(u) if v in c):
                return True
        return False

    exists = any(
        g.induced_min_degree(vs) > mindeg_goal and colorable(vs)
        for k in range(math.ceil(size_goal), g.n + 1)
        for vs in itertools.combinations(range(g.n), k)
    )
    assert (parts is not None) == exists
    if parts:
        verts = [v for p in parts for v in p]
        assert is_induced_rpartite(g, parts)
        assert len(verts) >= size_goal and g.induced_min_degree(verts) > mindeg_goal
        # |V_i| >= n - (r-1)(n - delta(G_0))
        d = g.induced_min_degree(verts)
        assert all(len(p) >= g.n - (r - 1) * (g.n - d) for p in parts)


@pytest.mark.parametrize("seed", range(5))
def test_extract_heuristic_on_perturbed_turan(seed):
    g = turan_graph(40, 3)
    noise = random_graph_gnp(40, 0.02, seed)
    flips = noise.edges()
    g = g.without_edges([e for e in flips if g.has_edge(*e)]).with_edges([e for e in flips if not g.has_edge(*e)])
    parts = extract_rpartite(g, 3, 30, 15, seed=seed)
    assert parts is not None and is_induced_rpartite(g, parts)
    verts = [v for p in parts for v in p]
    d = g.induced_min_degree(verts)
    assert len(verts) >= 30 and d > 15
    assert all(len(p) >= 40 - 2 * (40 - d) for p in parts)


# -- trim and complete -----------------------------------------------------

def p8(**kw):
    return relaxed(8, **kw)


def test_trim_examples():
    parts = [(0, 1, 2, 3), (4, 5, 6, 7)]
    t = turan_graph(8, 2)
    params = dataclasses.replace(p8(), part_size_u=4)
    e = trim_and_complete(parts, t, params)
    assert e.count == 0
    g = t.without_edges([(0, 4)])
    e = trim_and_complete(parts, g, params)
    assert e.additions == {(0, 4)} and not e.removals
    g = t.with_edges([(0, 1)])
    parts = extract_rpartite(g, 2, 4, 0)  # drops one endpoint of the inner edge
    params = dataclasses.replace(p8(), part_size_u=3)
    e = trim_and_complete(parts, g, params)
    assert e.removals == {(0, 1)} and not e.additions
    h = apply_edits(g, e)
    assert is_turan_partition(h, e.part_assignment, 2)
    assert h == t
    with pytest.raises(ValueError):
        trim_and_complete([(0, 1), (4, 5, 6, 7)], t, params)


@settings(max_examples=50, deadline=None)
@given(graphs(min_n=4, max_n=12), st.sampled_from([2, 3]))
def test_trim_always_reaches_turan(g, r):
    parts = extract_rpartite(g, r, 0.5, -1)
    params = dataclasses.replace(relaxed(g.n, r=r), part_size_u=min(len(p) for p in parts))
    e = trim_and_complete(parts, g, params)
    assert is_turan_partition(apply_edits(g, e), e.part_assignment, r)
    if g.n <= 10:
        assert e.count >= min_edit_to_turan_bruteforce(g, r)[0]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(1, 6), st.integers(0, 2**31))
def test_completion_bound(r, u, seed):
    # equal-part r-partite graph: random subset of the cross pairs of K_r(u,...,u)
    full = complete_multipartite([u] * r)
    noise = random_graph_gnp(r * u, 0.7, seed)
    h = Graph.from_edges(r * u, [e for e in full.edges() if noise.has_edge(*e)])
    missing = full.edge_count() - h.edge_count()
    size = r * u
    # ((1 - 1/r)|H| - delta) |H| / 2, kept in integers: (r-1)u is the cross degree
    assert 2 * missing <= ((r - 1) * u - h.min_degree()) * size


# -- dichotomy and checker -------------------------------------------------

def test_dichotomy_turan_is_zero_edit():
    g = turan_graph(8, 2)
    p = p8()
    c = stability_dichotomy(g, p)
    assert isinstance(c, ConditionB) and c.edit_count == 0 and c.within_bound
    assert check_certificate(g, c, p)


def test_dichotomy_condition_a_on_k8():
    g = complete(8)
    p = derived_params(2, 1e-40, 1e-3, 8, joint_threshold=1, edit_budget=1, s=2, t=2)
    c = stability_dichotomy(g, p)
    assert isinstance(c, ConditionA)
    assert c.witness.sizes[:2] == (2, 2) and c.t_achieved >= 2
    assert check_certificate(g, c, p)


def test_dichotomy_one_inner_edge():
    g = turan_graph(8, 2).with_edges([(0, 1)])
    p = p8()
    c = stability_dichotomy(g, p)
    assert isinstance(c, ConditionB) and c.edit_count == 1
    assert min_edit_to_turan_bruteforce(g, 2)[0] == 1
    assert check_certificate(g, c, p)


def test_dichotomy_fallback_to_b():
    # the peeling exceeds the budget but no K_3(3,3,t) exists in T_2(8)+edge
    g = turan_graph(8, 2).with_edges([(0, 1)])
    p = derived_params(2, 1e-40, 1e-3, 8, joint_threshold=0, edit_budget=1, s=3, t=1)
    c = stability_dichotomy(g, p)
    assert isinstance(c, ConditionB) and c.fallback
    assert check_certificate(g, c, p)


def test_dichotomy_extraction_failure_has_diagnostics():
    g = complete(8)
    p = derived_params(2, 1e-40, 1e-3, 8, joint_threshold=100, edit_budget=10**6, s=1, t=1)
    p = dataclasses.replace(p, size_goal=8, mindeg_goal=3)
    with pytest.raises(ExtractionFailed) as info:
        stability_dichotomy(g, p)
    assert info.value.diagnostics["removals"] == 0


def test_dichotomy_rejects_wrong_order():
    with pytest.raises(ValueError):
        stability_dichotomy(turan_graph(9, 2), p8())


def test_checker_rejects_bad_certificates(c5):
    p = relaxed(5, r=2, s=1, t=1, edit_budget=0)
    fake = ConditionA(MultipartiteWitness(((0,), (1,), (2,))), 1, 1, ())
    v = check_certificate(c5, fake, p)
    assert not v and "complete multipartite" in v.reason

    g = complete(4)
    p4 = derived_params(2, 1e-40, 1e-3, 4, joint_threshold=1, edit_budget=10**6, s=1, t=1)
    c = stability_dichotomy(g, p4)
    assert check_certificate(g, c, p4)
    (e, s), *rest = c.removals
    tampered = dataclasses.replace(c, removals=((e, 1),) + tuple(rest))
    v = check_certificate(g, tampered, p4)
    assert not v and "log step 0" in v.reason
    assert not check_certificate(g, dataclasses.replace(c, removals=c.removals[:1]), p4)
    assert not check_certificate(g, dataclasses.replace(c, edit_count=c.edit_count + 1), p4)
    bad = dataclasses.replace(c, edits=EditSet(c.edits.additions, frozenset(), c.edits.part_assignment))
    if c.edits.removals:
        assert not check_certificate(g, dataclasses.replace(bad, edit_count=bad.edits.count), p4)
    assert not check_certificate(g, dataclasses.replace(c, within_bound=not c.within_bound), p4)


def test_checker_condition_a_needs_budget():
    g = complete(8)
    p = derived_params(2, 1e-40, 1e-3, 8, joint_threshold=1, edit_budget=1, s=2, t=2)
    c = stability_dichotomy(g, p)
    p_hi = dataclasses.replace(p, edit_budget=10**6)
    assert not check_certificate(g, c, p_hi)
    assert not check_certificate(g, dataclasses.replace(c, t_achieved=1), dataclasses.replace(p, t=2))
