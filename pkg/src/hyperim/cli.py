"""Command-line entry point: stats, run, compare, gen-synthetic."""

from __future__ import annotations

import argparse
import json
import sys

from .config import ConfigError, default_jobs, parse_config
from .experiment import compare, comparison_csv, comparison_text, run_experiment
from .hypergraph import HypergraphError, load_hypergraph, save_hypergraph, stats
from .synthetic import random_hypergraph


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("config", nargs="?", help="flat JSON config file (flags override it)")
    p.add_argument("--dataset", help="hyperedge-list file")
    p.add_argument("--algorithm", choices=["hn-moea", "random", "high-degree"])
    p.add_argument("--model", choices=["wc", "sicp", "lt"])
    p.add_argument("--theta", type=float, help="LT activation threshold")
    p.add_argument("--theta-preset", dest="theta_preset", help="dataset name from the shipped LT presets")
    p.add_argument("--p-min", dest="p_min", type=float)
    p.add_argument("--p-max", dest="p_max", type=float)
    p.add_argument("--max-hops", dest="max_hops", type=int)
    p.add_argument("--num-simulations", dest="num_simulations", type=int)
    p.add_argument("--population-size", dest="population_size", type=int)
    p.add_argument("--offspring-size", dest="offspring_size", type=int)
    p.add_argument("--generations", type=int)
    p.add_argument("--elites", type=int)
    p.add_argument("--tournament-size", dest="tournament_size", type=int)
    p.add_argument("--k-min", dest="k_min", type=int)
    p.add_argument("--k-max", dest="k_max", type=int)
    p.add_argument("--lambda-fraction", dest="lambda_fraction", type=float)
    p.add_argument("--num-runs", dest="num_runs", type=int)
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--output", help="output base path (writes <output>.json and <output>.csv)")
    p.add_argument("--jobs", type=int, default=None,
                   help=f"parallel runs (default HYPERIM_JOBS or {default_jobs()})")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="hyperim",
                                     description="Bi-objective influence maximization on hypergraphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="print dataset summary statistics as JSON")
    p_stats.add_argument("dataset")

    p_run = sub.add_parser("run", help="run an experiment and write report files")
    _add_run_flags(p_run)

    p_cmp = sub.add_parser("compare", help="tabulate metrics across report JSON files")
    p_cmp.add_argument("reports", nargs="+")
    p_cmp.add_argument("--csv", help="also write the comparison table as CSV")

    p_gen = sub.add_parser("gen-synthetic", help="generate a seeded random hypergraph file")
    p_gen.add_argument("--nodes", type=int, required=True)
    p_gen.add_argument("--edges", type=int, required=True)
    p_gen.add_argument("--min-size", dest="min_size", type=int, default=2)
    p_gen.add_argument("--max-size", dest="max_size", type=int, default=5)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--output", required=True)

    args = parser.parse_args(argv)
    try:
        if args.command == "stats":
            h = load_hypergraph(args.dataset)
            print(json.dumps(stats(h).as_dict(), indent=2))
        elif args.command == "run":
            overrides = {
                k: v
                for k, v in vars(args).items()
                if k not in ("command", "config") and v is not None
            }
            cfg = parse_config(args.config, overrides)
            report = run_experiment(cfg)
            agg = report["aggregate"]["hypervolume"]
            print(f"wrote {cfg.output}.json and {cfg.output}.csv")
            print(f"hypervolume over {cfg.num_runs} run(s): {agg['mean']:.4e} +/- {agg['std']:.1e}")
        elif args.command == "compare":
            reports = []
            for path in args.reports:
                with open(path, "r", encoding="utf-8") as fh:
                    reports.append(json.load(fh))
            cmp = compare(reports)
            print(comparison_text(cmp))
            if args.csv:
                with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                    fh.write(comparison_csv(cmp))
        elif args.command == "gen-synthetic":
            h = random_hypergraph(args.nodes, args.edges, args.min_size, args.max_size, args.seed)
            save_hypergraph(h, args.output)
            print(f"wrote {args.output}: {h.n} nodes, {h.m} hyperedges")
    except (ConfigError, HypergraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
