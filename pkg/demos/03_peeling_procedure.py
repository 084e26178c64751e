"""Peeling edges out of large joints.

procedure_p repeatedly drops the edge with the largest (r+1)-clique support
until no joint exceeds the threshold.  Each removal is logged with its support.

Run: python demos/03_peeling_procedure.py
"""

import math

from spectral_stability import clique_stats, count_cliques, procedure_p, random_graph_gnp, spectral_radius

r, thr = 2, 3
g = random_graph_gnp(50, 0.3, seed=11)
h, log = procedure_p(g, r, thr)

# %% What was removed.
print(f"removed {len(log)} of {g.edge_count()} edges; first few: {log[:4]}")
print(f"js_3 before {clique_stats(g, 3).joints}, after {clique_stats(h, 3).joints} (threshold {thr})")

# %% Each logged support counts distinct triangles, so the sum cannot exceed k_3(G).
print(f"sum of supports {sum(s for _, s in log)} <= k_3(G) = {count_cliques(g, 3)}")

# %% Removing q edges lowers mu by at most sqrt(2q).
drop = spectral_radius(g).mu - spectral_radius(h).mu
print(f"mu drop {drop:.4f} <= sqrt(2q) = {math.sqrt(2 * len(log)):.4f}")
