"""Turan graphs and their spectral radius.

Run: python demos/01_turan_and_spectra.py
"""

import numpy as np

from spectral_stability import spectral_radius, sqrt_edge_bound, turan_graph, turan_part_sizes
from spectral_stability.graph import turan_edge_count

# %% Part sizes differ by at most one, larger parts first.
for n, r in [(10, 3), (11, 4), (7, 2)]:
    print(f"T_{r}({n}) parts {turan_part_sizes(n, r)}  edges {turan_edge_count(n, r)}")

# %% Balanced Turan graphs are regular, so mu equals the common degree.
g = turan_graph(12, 3)
res = spectral_radius(g)
print(f"\nT_3(12): mu = {res.mu:.9f}, degree {g.max_degree()}, residual {res.residual:.1e}")

# %% Cross-check against a dense eigensolver.
dense = np.linalg.eigvalsh(g.adjacency_matrix()).max()
print(f"dense eigvalsh: {dense:.9f}")

# %% With unequal parts the graph is irregular and mu sits strictly above 2e/n.
g = turan_graph(11, 3)
mu = spectral_radius(g).mu
e = g.edge_count()
print(f"\nT_3(11): 2e/n = {2 * e / g.n:.4f} <= mu = {mu:.4f} <= sqrt(2e) = {sqrt_edge_bound(g):.4f}")
