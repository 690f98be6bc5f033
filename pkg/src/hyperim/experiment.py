"""Multi-run experiment harness: orchestration, aggregation, serialization.

One experiment executes ``num_runs`` independent runs of the selected
algorithm, each seeded from the master seed and the run index, computes
front metrics against the reference point (influence 0, seed fraction
(k_max + 1) / n), and writes a JSON report plus a CSV of front points with
columns run, k, influence, seed_fraction, genotype.

Runs are independent and may execute in a process pool (``jobs``); results
are assembled in run order, so the report does not depend on scheduling.
"""

from __future__ import annotations

import csv
import datetime
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from . import __version__, rng
from .baselines import family_to_front, high_degree_baseline, random_baseline
from .config import RunConfig, parse_config
from .evolutionary import Fitness, ParetoFront, evolve
from .hypergraph import Hypergraph, load_hypergraph
from .metrics import compute_front_metrics


def reference_point(cfg: RunConfig, n: int) -> Fitness:
    """Hypervolume reference: zero influence, one seed above k_max (normalized).

    The choice keeps a k_max-sized solution strictly inside the dominated
    region; absolute hypervolume values depend on it, so it is fixed here
    and echoed through the report.
    """
    return Fitness(0.0, (cfg.ea.k_max + 1) / n)


def _execute_run(h: Hypergraph, cfg: RunConfig, run_index: int) -> dict:
    run_seed = rng.derive_seed(cfg.seed, rng.RUN_DOMAIN, run_index)
    started = time.perf_counter()
    if cfg.algorithm == "hn-moea":
        params = replace(cfg.ea, rng_seed=run_seed)
        front = evolve(h, cfg.model, cfg.spread, params)
    elif cfg.algorithm == "random":
        g = rng.generator(run_seed, rng.BASELINE_DOMAIN)
        family = random_baseline(h, cfg.ea.k_min, cfg.ea.k_max, g)
        front = family_to_front(h, family, cfg.model, replace(cfg.spread, rng_seed=run_seed))
    else:
        family = high_degree_baseline(h, cfg.ea.k_min, cfg.ea.k_max)
        front = family_to_front(h, family, cfg.model, replace(cfg.spread, rng_seed=run_seed))
    elapsed = time.perf_counter() - started

    entries = sorted(
        front.entries,
        key=lambda e: (len(e[0].genes), e[1].influence, tuple(sorted(e[0].genes))),
    )
    ref = reference_point(cfg, h.n)
    metrics = compute_front_metrics(h, [f for _, f in entries], [set(i.genes) for i, _ in entries], ref)
    return {
        "run": run_index,
        "seed": run_seed,
        "wall_clock_seconds": elapsed,
        "front": [
            {
                "k": len(ind.genes),
                "influence": fit.influence,
                "seed_fraction": fit.seed_fraction,
                "genes": sorted(ind.genes),
                "tokens": [h.tokens[v] for v in sorted(ind.genes)],
            }
            for ind, fit in entries
        ],
        "metrics": metrics.as_dict(),
    }


def _run_worker(flat_cfg: dict, run_index: int) -> dict:
    # workers rebuild their own state; determinism comes from the seeds alone
    cfg = parse_config(overrides=flat_cfg)
    h = load_hypergraph(cfg.dataset)
    return _execute_run(h, cfg, run_index)


def _aggregate(values: list[float | None]) -> dict:
    defined = [v for v in values if v is not None]
    if not defined:
        return {"mean": None, "std": None, "count": 0}
    return {
        "mean": float(np.mean(defined)),
        "std": float(np.std(defined)),
        "count": len(defined),
    }


def run_experiment(cfg: RunConfig, write_files: bool = True) -> dict:
    """Execute all runs, aggregate metrics, and (optionally) write
    <output>.json and <output>.csv.  Returns the report dict."""
    h = load_hypergraph(cfg.dataset)
    if cfg.ea.k_max > h.n:
        raise ValueError(f"k_max={cfg.ea.k_max} exceeds the dataset's node count {h.n}")

    if cfg.jobs > 1 and cfg.num_runs > 1:
        flat = cfg.to_flat()
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, cfg.num_runs)) as pool:
            futures = [pool.submit(_run_worker, flat, r) for r in range(cfg.num_runs)]
            runs = [f.result() for f in futures]
    else:
        runs = [_execute_run(h, cfg, r) for r in range(cfg.num_runs)]

    ref = reference_point(cfg, h.n)
    report = {
        "version": __version__,
        "created_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "master_seed": cfg.seed,
        "config": cfg.to_flat(),
        "reference_point": {"influence": ref.influence, "seed_fraction": ref.seed_fraction},
        "runs": runs,
        "aggregate": {
            "hypervolume": _aggregate([r["metrics"]["hypervolume"] for r in runs]),
            "population_diversity": _aggregate([r["metrics"]["population_diversity"] for r in runs]),
            "node_diversity": _aggregate([r["metrics"]["node_diversity"] for r in runs]),
        },
    }

    if write_files:
        json_path = cfg.output + ".json"
        csv_path = cfg.output + ".csv"
        try:
            with open(json_path, "w", encoding="utf-8") as fh:
                json.dump(report, fh, indent=2)
                fh.write("\n")
            with open(csv_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(front_csv(report))
        except OSError as exc:
            raise OSError(f"cannot write report to {cfg.output}.json/.csv: {exc}") from exc
    return report


def front_csv(report: dict) -> str:
    """CSV of all front points: run, k, influence, seed_fraction, genotype."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["run", "k", "influence", "seed_fraction", "genotype"])
    for run in report["runs"]:
        for point in run["front"]:
            writer.writerow(
                [
                    run["run"],
                    point["k"],
                    repr(point["influence"]),
                    repr(point["seed_fraction"]),
                    " ".join(point["tokens"]),
                ]
            )
    return buf.getvalue()


# -- cross-report comparison ------------------------------------------------

_COMPARED_METRICS = ("hypervolume", "population_diversity", "node_diversity")


def _model_fingerprint(config: dict) -> tuple:
    return (
        config["dataset"],
        config["model"],
        config.get("theta"),
        config.get("p_min"),
        config.get("p_max"),
    )


def compare(reports: list[dict]) -> dict:
    """Tabulate mean +/- std metrics per algorithm, flagging the best per metric.

    All reports must describe the same dataset and propagation model.
    """
    if len(reports) < 2:
        raise ValueError("need at least 2 reports to compare")
    fingerprints = {_model_fingerprint(r["config"]) for r in reports}
    if len(fingerprints) != 1:
        raise ValueError(f"reports disagree on dataset/model: {sorted(map(str, fingerprints))}")

    rows = []
    for r in reports:
        row = {"algorithm": r["config"]["algorithm"]}
        for metric in _COMPARED_METRICS:
            agg = r["aggregate"][metric]
            row[metric + "_mean"] = agg["mean"]
            row[metric + "_std"] = agg["std"]
        rows.append(row)
    for metric in _COMPARED_METRICS:
        values = [row[metric + "_mean"] for row in rows]
        defined = [v for v in values if v is not None]
        best = max(defined) if defined else None
        for row, v in zip(rows, values):
            row[metric + "_best"] = v is not None and v == best
    dataset, model = reports[0]["config"]["dataset"], reports[0]["config"]["model"]
    return {"dataset": dataset, "model": model, "rows": rows}


def comparison_text(cmp: dict) -> str:
    def cell(row, metric):
        mean, std = row[metric + "_mean"], row[metric + "_std"]
        if mean is None:
            return "n/a"
        mark = " *" if row[metric + "_best"] else ""
        return f"{mean:.3e} +/- {std:.1e}{mark}"

    lines = [f"dataset={cmp['dataset']} model={cmp['model']} (* = best per metric)"]
    header = f"{'algorithm':<12} {'hypervolume':>24} {'pop. diversity':>24} {'node diversity':>24}"
    lines.append(header)
    lines.append("-" * len(header))
    for row in cmp["rows"]:
        lines.append(
            f"{row['algorithm']:<12} {cell(row, 'hypervolume'):>24}"
            f" {cell(row, 'population_diversity'):>24} {cell(row, 'node_diversity'):>24}"
        )
    return "\n".join(lines)


def comparison_csv(cmp: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["algorithm"]
    for metric in _COMPARED_METRICS:
        header += [metric + "_mean", metric + "_std", metric + "_best"]
    writer.writerow(header)
    for row in cmp["rows"]:
        out = [row["algorithm"]]
        for metric in _COMPARED_METRICS:
            out += [row[metric + "_mean"], row[metric + "_std"], row[metric + "_best"]]
        writer.writerow(out)
    return buf.getvalue()
