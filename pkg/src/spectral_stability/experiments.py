"""Seeded experiments and report files.

A report is written twice: a JSON document with the configuration, one record
per trial (including the full certificate) and an aggregate summary, and a
CSV sibling with one fixed-format row per trial.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
import os
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

from .cliques import clique_stats
from .errors import BudgetExceeded, ExtractionFailed
from .graph import BRUTEFORCE_MAX_ORDER, Graph, min_edit_to_turan_bruteforce, random_graph_fixed_edges
from .multipartite import find_complete_multipartite, is_exact_regime
from .serialize import certificate_from_dict, certificate_to_dict
from .spectral import spectral_radius
from .stability import check_certificate, derived_params, stability_dichotomy

log = logging.getLogger(__name__)

REPORT_SCHEMA = "spectral-stability/report@1"
CSV_HEADER = ["trial", "seed", "n", "m", "mu", "k_r1", "js_r1", "cert", "edits_or_t", "verified", "ms"]
MODES = ("analyze", "dichotomy", "probe")


@dataclass
class ExperimentConfig:
    mode: str = "probe"
    r: int = 2
    c: float = 0.5
    eps: float = 0.1
    n: int = 20
    m: int | None = None
    trials: int = 1
    seed: int = 0
    joint_threshold: float | None = None
    edit_budget: int | None = None
    s: int | None = None
    t: int | None = None
    input_path: str | None = None
    output_path: str | None = None
    timing: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    def trial_seed(self, i: int) -> int:
        return self.seed + i

    def overrides(self) -> dict:
        out = dict(joint_threshold=self.joint_threshold, edit_budget=self.edit_budget, s=self.s, t=self.t)
        return {k: v for k, v in out.items() if v is not None}


@dataclass
class TrialRecord:
    trial: int
    seed: int
    n: int
    m: int
    mu: float
    k_r1: int
    js_r1: int
    cert: str  # "A", "B" or "failed"
    edits_or_t: int | None
    verified: bool
    ms: float | None = None
    biclique_b: int | None = None
    biclique_regime: str | None = None
    reason: str = ""
    certificate: dict | None = None

    def row(self) -> list[str]:
        return [
            str(self.trial),
            str(self.seed),
            str(self.n),
            str(self.m),
            f"{self.mu:.9f}",
            str(self.k_r1),
            str(self.js_r1),
            self.cert,
            "" if self.edits_or_t is None else str(self.edits_or_t),
            "true" if self.verified else "false",
            "" if self.ms is None else f"{self.ms:.3f}",
        ]


@dataclass
class Report:
    config: ExperimentConfig
    trials: list[TrialRecord] = field(default_factory=list)

    def summary(self) -> dict:
        def agg(xs):
            xs = [x for x in xs if x is not None]
            if not xs:
                return None
            return {"min": min(xs), "median": statistics.median(xs), "max": max(xs)}

        return {
            "trials": len(self.trials),
            "verified": sum(t.verified for t in self.trials),
            "failed": sum(t.cert == "failed" for t in self.trials),
            "biclique_b": agg([t.biclique_b for t in self.trials]),
            "edits_or_t": agg([t.edits_or_t for t in self.trials]),
            "mu": agg([t.mu for t in self.trials]),
        }


def probe_edge_count(n: int, r: int) -> int:
    """ceil((1 - 1/r) n^2 / 2) in exact integer arithmetic."""
    return -(-(r - 1) * n * n // (2 * r))


def largest_balanced_biclique(g: Graph) -> tuple[int, str]:
    """Largest b with K_2(b, b) found, and the regime of the last search."""
    best, regime = 0, "exact"
    b = 1
    while 2 * b <= g.n:
        try:
            w = find_complete_multipartite(g, (b, b))
        except BudgetExceeded:
            return best, "budget"
        if w is None:
            if not is_exact_regime(g, 2 * b):
                regime = "heuristic"
            break
        best, regime = b, w.regime
        b += 1
    return best, regime


def certify(g: Graph, cfg: ExperimentConfig, seed: int = 0):
    """Run the engine on ``g``; returns ``(cert_tag, value, verified, reason, doc)``."""
    try:
        params = derived_params(cfg.r, cfg.c, cfg.eps, g.n, **cfg.overrides())
        cert = stability_dichotomy(g, params, seed=seed)
    except (ValueError, ExtractionFailed) as exc:
        return "failed", None, False, f"{type(exc).__name__}: {exc}", None
    verdict = check_certificate(g, cert, params)
    value = cert.t_achieved if cert.tag == "A" else cert.edit_count
    return cert.tag, value, verdict.ok, verdict.reason, certificate_to_dict(cert, params, verdict)


def _trial(g: Graph, cfg: ExperimentConfig, i: int, seed: int, with_biclique: bool) -> TrialRecord:
    t0 = time.perf_counter()
    k = cfg.r + 1
    stats = clique_stats(g, k)
    mu = spectral_radius(g).mu
    b, regime = largest_balanced_biclique(g) if with_biclique else (None, None)
    tag, value, ok, reason, doc = certify(g, cfg, seed)
    ms = (time.perf_counter() - t0) * 1000 if cfg.timing else None
    return TrialRecord(
        trial=i,
        seed=seed,
        n=g.n,
        m=g.edge_count(),
        mu=mu,
        k_r1=stats.total,
        js_r1=stats.joints,
        cert=tag,
        edits_or_t=value,
        verified=ok,
        ms=ms,
        biclique_b=b,
        biclique_regime=regime,
        reason=reason,
        certificate=doc,
    )


def run_probe(cfg: ExperimentConfig) -> Report:
    """Random graphs with ceil((1-1/r) n^2/2) edges: largest balanced biclique and certificate."""
    if cfg.mode != "probe":
        raise ValueError("run_probe needs mode='probe'")
    m = probe_edge_count(cfg.n, cfg.r) if cfg.m is None else cfg.m
    report = Report(cfg)
    for i in range(cfg.trials):
        seed = cfg.trial_seed(i)
        g = random_graph_fixed_edges(cfg.n, m, seed)
        try:
            rec = _trial(g, cfg, i, seed, with_biclique=True)
        except Exception as exc:  # a failing trial must not abort the sweep
            log.warning("trial %d failed: %s", i, exc)
            rec = TrialRecord(i, seed, g.n, g.edge_count(), float("nan"), 0, 0, "failed", None, False,
                              reason=f"{type(exc).__name__}: {exc}")
        report.trials.append(rec)
    return report


def run_dichotomy(g: Graph, cfg: ExperimentConfig) -> Report:
    report = Report(cfg)
    report.trials.append(_trial(g, cfg, 0, cfg.seed, with_biclique=False))
    return report


def analyze(g: Graph, r: int) -> dict:
    """Spectral radius, its standard bounds and (r+1)-clique statistics."""
    res = spectral_radius(g) if g.n else None
    e = g.edge_count()
    stats = clique_stats(g, r + 1)
    out = {
        "n": g.n,
        "m": e,
        "mu": None if res is None else res.mu,
        "mu_residual": None if res is None else res.residual,
        "average_degree": 2 * e / g.n if g.n else 0.0,
        "max_degree": g.max_degree(),
        "sqrt_2e": (2 * e) ** 0.5,
        f"k_{r + 1}": stats.total,
        f"js_{r + 1}": stats.joints,
    }
    if r <= g.n <= BRUTEFORCE_MAX_ORDER:
        out["turan_edit_distance"] = min_edit_to_turan_bruteforce(g, r)[0]
    return out


# -- report files ----------------------------------------------------------

def csv_path_for(path: str | os.PathLike) -> Path:
    return Path(path).with_suffix(".csv")


def report_to_dict(report: Report) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "config": dataclasses.asdict(report.config),
        "summary": report.summary(),
        "trials": [dataclasses.asdict(t) for t in report.trials],
    }


def report_from_dict(doc: dict) -> Report:
    if doc.get("schema") != REPORT_SCHEMA:
        raise ValueError(f"unknown report schema {doc.get('schema')!r}")
    cfg = ExperimentConfig(**doc["config"])
    return Report(cfg, [TrialRecord(**t) for t in doc["trials"]])


def report_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for t in report.trials:
        w.writerow(t.row())
    return buf.getvalue()


def emit_report(report: Report, path: str | os.PathLike) -> tuple[Path, Path]:
    """Write ``path`` (JSON) and its ``.csv`` sibling; returns both paths."""
    path = Path(path)
    if path.suffix == ".csv":
        raise ValueError("report path must not end in .csv (that name is used for the table)")
    side = csv_path_for(path)
    try:
        path.write_text(json.dumps(report_to_dict(report), indent=1, sort_keys=True) + "\n", encoding="ascii")
        side.write_text(report_csv(report), encoding="ascii", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
    return path, side


def load_report(path: str | os.PathLike) -> Report:
    with open(path, encoding="ascii") as fh:
        return report_from_dict(json.load(fh))


def recheck_probe_report(report: Report) -> list[tuple[int, bool, str]]:
    """Regenerate each probe graph and re-run the certificate checker."""
    out = []
    for t in report.trials:
        if t.certificate is None:
            continue
        g = random_graph_fixed_edges(t.n, t.m, t.seed)
        cert, params, _ = certificate_from_dict(t.certificate)
        v = check_certificate(g, cert, params)
        out.append((t.trial, v.ok, v.reason))
    return out
