"""The two certificate outcomes, and checking them independently.

Run: python demos/04_dichotomy_certificates.py
"""

from spectral_stability import (
    apply_edits,
    check_certificate,
    derived_params,
    random_graph_gnp,
    stability_dichotomy,
    turan_graph,
)
from spectral_stability.serialize import dumps_certificate

n, r = 30, 2
# Constants from the hypothesis window are far too large at n = 30; override them.
params = derived_params(r, 1e-40, 1e-3, n, joint_threshold=n / 10, edit_budget=n, s=2, t=2)
print(f"in hypothesis window: {params.hypothesis_window}; overrides {params.overrides}")

# %% A near-Turan graph: a handful of edge flips on T_2(30).
g = turan_graph(n, r).without_edges([(0, 15), (1, 20)]).with_edges([(0, 1), (16, 17)])
cert = stability_dichotomy(g, params)
print(f"\nnear-Turan -> condition {cert.tag}, {cert.edit_count} edits, bound {cert.bound:.1f}")
h = apply_edits(g, cert.edits)
print(f"edited graph has {h.edge_count()} edges; T_2(30) has {turan_graph(n, r).edge_count()}")
print("checker:", check_certificate(g, cert, params))

# %% A dense random graph carries a big K_3(2, 2, t).
g = random_graph_gnp(n, 0.8, seed=5)
cert = stability_dichotomy(g, params)
print(f"\ndense random -> condition {cert.tag}", end="")
if cert.tag == "A":
    print(f", witness sizes {cert.witness.sizes}")
else:
    print(f", {cert.edit_count} edits")
print("checker:", check_certificate(g, cert, params))

# %% Certificates serialize to JSON for later re-checking.
print(dumps_certificate(cert, params)[:300], "...")
