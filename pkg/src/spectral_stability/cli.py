"""Command-line front end: ``analyze``, ``dichotomy`` and ``probe``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .edgelist import read_edge_list
from .errors import EdgeListParseError
from .experiments import ExperimentConfig, analyze, emit_report, run_dichotomy, run_probe


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spectral-stability", description=__doc__)
    sub = p.add_subparsers(dest="mode", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, default=2, help="number of Turan parts (default 2)")
    common.add_argument("--in", dest="input_path", help="edge-list file")
    common.add_argument("--out", dest="output_path", help="output file (JSON; a .csv sibling is written for reports)")

    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument("--c", type=float, default=0.5)
    engine.add_argument("--eps", type=float, default=0.1)
    engine.add_argument("--joint-threshold", type=float)
    engine.add_argument("--edit-budget", type=int)
    engine.add_argument("--s", type=int, help="override the witness part size")
    engine.add_argument("--t", type=int, help="override the witness final-part target")
    engine.add_argument("--seed", type=int, default=0)
    engine.add_argument("--timing", action="store_true", help="record wall time (makes reports non-reproducible)")

    sub.add_parser("analyze", parents=[common], help="spectral radius, bounds and clique statistics")
    sub.add_parser("dichotomy", parents=[common, engine], help="run the engine on one graph")
    pr = sub.add_parser("probe", parents=[common, engine], help="random-graph sweep")
    pr.add_argument("--n", type=int, default=20)
    pr.add_argument("--m", type=int, help="edge count (default ceil((1-1/r) n^2 / 2))")
    pr.add_argument("--trials", type=int, default=1)
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = _parser().parse_args(argv)
    try:
        if args.mode == "analyze":
            if not args.input_path:
                raise SystemExit("analyze needs --in")
            out = analyze(read_edge_list(args.input_path), args.r)
            text = json.dumps(out, indent=1, sort_keys=True) + "\n"
            if args.output_path:
                with open(args.output_path, "w", encoding="ascii") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0

        cfg = ExperimentConfig(**{k: v for k, v in vars(args).items() if k in ExperimentConfig.__dataclass_fields__})
        if args.mode == "dichotomy":
            if not args.input_path:
                raise SystemExit("dichotomy needs --in")
            g = read_edge_list(args.input_path)
            cfg.n = g.n
            report = run_dichotomy(g, cfg)
        else:
            report = run_probe(cfg)
    except (EdgeListParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    for t in report.trials:
        print(",".join(t.row()))
    if cfg.output_path:
        emit_report(report, cfg.output_path)
    return 0 if all(t.verified for t in report.trials) else 1
