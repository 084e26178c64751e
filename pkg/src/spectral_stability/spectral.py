"""Largest adjacency eigenvalue by shifted power iteration.

Each connected component is iterated separately with ``A + I`` from the
all-ones vector.  On a connected component the iterate stays strictly
positive, so the Rayleigh quotient and the Collatz-Wielandt ratio
``max_i (Ax)_i / x_i`` bracket the Perron root from below and above.  The
width of that bracket is the reported residual, which makes it a bound on
the error rather than an estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .errors import ConvergenceError
from .graph import Edge, Graph

DEFAULT_TOL = 1e-9
MAX_ITER = 10**6


@dataclass(frozen=True)
class SpectralResult:
    mu: float
    iterations: int
    residual: float


def _csr(g: Graph) -> sparse.csr_matrix:
    edges = g.edges()
    if not edges:
        return sparse.csr_matrix((g.n, g.n))
    e = np.asarray(edges, dtype=np.int64)
    rows = np.concatenate([e[:, 0], e[:, 1]])
    cols = np.concatenate([e[:, 1], e[:, 0]])
    data = np.ones(rows.size)
    return sparse.csr_matrix((data, (rows, cols)), shape=(g.n, g.n))


def _perron(a: sparse.csr_matrix, tol: float, max_iter: int) -> tuple[float, int, float]:
    k = a.shape[0]
    if k == 1:
        return 0.0, 0, 0.0
    x = np.ones(k) / math.sqrt(k)
    for it in range(1, max_iter + 1):
        ax = a @ x
        rho = float(x @ ax)
        upper = float(np.max(ax / x))
        resid = upper - rho
        if resid <= tol:
            return rho, it, max(resid, 0.0)
        y = ax + x
        x = y / np.linalg.norm(y)
    raise ConvergenceError(
        f"power iteration did not reach tol={tol} in {max_iter} steps (residual {resid:.3e})",
        iterations=max_iter,
        residual=resid,
    )


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> SpectralResult:
    """mu(G), certified to lie within ``residual <= tol`` of the returned value."""
    if g.n < 1:
        raise ValueError("spectral radius needs at least one vertex")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if g.edge_count() == 0:
        return SpectralResult(0.0, 0, 0.0)
    a = _csr(g)
    ncomp, labels = csgraph.connected_components(a, directed=False)
    best, iters, resid = 0.0, 0, 0.0
    for c in range(ncomp):
        idx = np.flatnonzero(labels == c)
        if idx.size < 2:
            continue
        sub = a[idx][:, idx].tocsr()
        mu, it, res = _perron(sub, tol, max_iter)
        iters += it
        if mu > best:
            best, resid = mu, res
    return SpectralResult(best, iters, resid)


def mu(g: Graph, tol: float = DEFAULT_TOL) -> float:
    return spectral_radius(g, tol).mu


def sqrt_edge_bound(g: Graph) -> float:
    return math.sqrt(2 * g.edge_count())


def weyl_gap_check(g: Graph, removed: Iterable[Edge], tol: float = DEFAULT_TOL):
    """Check mu(G - R) >= mu(G) - mu(R) for an edge set R of G.

    Returns ``(mu_g, mu_g_minus, mu_removed, holds)``.
    """
    removed = [tuple(sorted(e)) for e in removed]
    for u, v in removed:
        if not g.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge of the graph")
    mu_g = spectral_radius(g, tol).mu
    mu_minus = spectral_radius(g.without_edges(removed), tol).mu
    mu_rem = spectral_radius(Graph.from_edges(g.n, removed), tol).mu
    holds = mu_minus >= mu_g - mu_rem - tol
    return mu_g, mu_minus, mu_rem, holds
