"""Random graphs at the Turan edge count.

Each trial draws a uniform graph with ceil((1 - 1/r) n^2 / 2) edges, searches
for the largest balanced biclique and runs the certificate engine.  The same
sweep is available as ``spectral-stability probe``.

Run: python demos/05_random_graph_probe.py
"""

import tempfile
from pathlib import Path

from spectral_stability.experiments import ExperimentConfig, emit_report, recheck_probe_report, run_probe

cfg = ExperimentConfig(mode="probe", n=24, r=2, trials=5, seed=1, s=2, t=2, joint_threshold=2.4, edit_budget=24)
report = run_probe(cfg)

# %%
for t in report.trials:
    print(f"trial {t.trial}: m={t.m} mu={t.mu:.3f} b={t.biclique_b} ({t.biclique_regime}) cert={t.cert} value={t.edits_or_t}")
print("summary:", report.summary())

# %% Write the JSON + CSV pair, then re-check every stored certificate.
with tempfile.TemporaryDirectory() as d:
    js, csv = emit_report(report, Path(d) / "probe.json")
    print("\n" + csv.read_text())
print("recheck:", recheck_probe_report(report))
