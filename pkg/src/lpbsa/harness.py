"""
Multi-run experiments on the benchmark suite and result emission.

Run ``k`` of an experiment uses the stream ``make_rng(base_seed + k)``; the
same stream feeds the optimizer and, for TF7, the objective noise. Standard
deviations use the population form (divisor ``n``).
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .annealing import SAConfig, sa_optimize
from .benchmarks import lookup
from .core import InvalidInputError, RunConfig, Sense, make_rng, sort_best_first
from .engine import evaluations_per_iteration, lpb_run, lpbsa_run

__all__ = [
    "ALGORITHMS",
    "REFERENCE_ALGORITHMS",
    "ExperimentConfig",
    "RunStats",
    "describe",
    "run_single",
    "run_experiment",
    "reference_table",
    "summary_csv",
    "summary_text",
    "stats_csv",
    "per_run_csv",
    "convergence_csv",
    "emit_results",
]

ALGORITHMS = ("lpbsa", "lpb", "sa")
REFERENCE_ALGORITHMS = ("LPBSA", "LPB", "DA", "PSO", "GA")
STD_DIVISOR = "n"


@dataclass(frozen=True)
class ExperimentConfig:
    """
    What every run of an experiment shares.

    When ``evaluations`` is set it overrides ``run.max_iterations`` so that
    LPB, LPBSA and SA all spend the same number of objective calls.
    ``dimension`` applies to scalable functions only; fixed-dimension ones
    keep their own.
    """

    run: RunConfig = field(default_factory=RunConfig)
    dimension: Optional[int] = None
    evaluations: Optional[int] = None
    base_seed: int = 0

    def iterations(self) -> int:
        if self.evaluations is None:
            return self.run.max_iterations
        spare = self.evaluations - self.run.population_size
        if spare < 0:
            raise InvalidInputError("evaluation budget is smaller than the initial population")
        return spare // evaluations_per_iteration(self.run)

    def evaluation_budget(self) -> int:
        return self.run.population_size + self.iterations() * evaluations_per_iteration(self.run)


@dataclass(frozen=True)
class RunStats:
    function_id: str
    algorithm: str
    runs: int
    average: float
    std: float
    best: float
    worst: float
    per_run_finals: tuple
    convergence: tuple
    seeds: tuple
    sense: Sense = Sense.MINIMIZE


def describe(values: Sequence[float], sense: Sense = Sense.MINIMIZE) -> tuple:
    """Return ``(average, population std, best, worst)``."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise InvalidInputError("no values to describe")
    avg = float(np.mean(v))
    std = float(np.std(v))
    if sense is Sense.MAXIMIZE:
        return avg, std, float(v.max()), float(v.min())
    return avg, std, float(v.min()), float(v.max())


def run_single(algorithm: str, function_id: str, config: ExperimentConfig, run_index: int):
    """
    One seeded run.

    Returns ``(best, curve)`` where ``best`` is the best Individual found
    and ``curve`` lists ``(evaluations, best_so_far)`` pairs, one per LPB
    iteration (SA is sampled at the same evaluation counts).
    """
    if algorithm not in ALGORITHMS:
        raise InvalidInputError(f"unknown algorithm {algorithm!r}")
    seed = config.base_seed + run_index
    rng = make_rng(seed)
    bf = lookup(function_id)
    problem = bf.problem(config.dimension if bf.scalable else None, rng)
    run_cfg = config.run
    iterations = config.iterations()
    if algorithm == "sa":
        budget = config.evaluation_budget()
        sa_cfg = SAConfig(run_cfg.temperature, run_cfg.cooling, budget - 1, run_cfg.sigma)
        best, trace = sa_optimize(problem, sa_cfg, rng)
        stride = evaluations_per_iteration(run_cfg)
        first = run_cfg.population_size
        points = range(first, budget + 1, stride)
        curve = tuple((e, float(trace[e - 1])) for e in points)
        return best, curve
    engine = lpbsa_run if algorithm == "lpbsa" else lpb_run
    cfg = replace(run_cfg, max_iterations=iterations, seed=seed)
    best, history = engine(problem, cfg, rng)
    start = sort_best_first(history[0].pool, problem.sense)[0].fitness if history else best.fitness
    curve = [(cfg.population_size, float(start))]
    curve += [(rec.evaluations, float(rec.best.fitness)) for rec in history]
    return best, tuple(curve)


def _run_job(args):
    return run_single(*args)


def run_experiment(
    algorithm: str,
    function_id: str,
    config: ExperimentConfig,
    runs: int,
    workers: int = 1,
) -> RunStats:
    """
    Execute ``runs`` independent runs and aggregate them.

    Parameters
    ----------
    algorithm : {"lpbsa", "lpb", "sa"}
    function_id : str
        Benchmark id such as ``"TF1"``.
    config : ExperimentConfig
    runs : int
        Number of runs, at least 1.
    workers : int
        Worker processes; results are identical for any value.
    """
    if runs < 1:
        raise InvalidInputError("runs must be >= 1")
    bf = lookup(function_id)
    jobs = [(algorithm, bf.id, config, k) for k in range(runs)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs))
    else:
        results = [_run_job(j) for j in jobs]
    finals = tuple(float(r[0].fitness) for r in results)
    avg, std, best, worst = describe(finals)
    return RunStats(
        function_id=bf.id,
        algorithm=algorithm,
        runs=runs,
        average=avg,
        std=std,
        best=best,
        worst=worst,
        per_run_finals=finals,
        convergence=tuple(r[1] for r in results),
        seeds=tuple(config.base_seed + k for k in range(runs)),
    )


def reference_table() -> dict:
    """
    Published averages and standard deviations, keyed by function id and
    then by algorithm, kept as the original strings.
    """
    text = resources.files("lpbsa").joinpath("data/reference_results.csv").read_text(encoding="utf-8")
    table = {}
    for row in csv.DictReader(io.StringIO(text)):
        table[row["function"]] = {
            alg: (row[f"{alg}_AVA"], row[f"{alg}_STD"]) for alg in REFERENCE_ALGORITHMS
        }
    return table


def _fmt(value: float) -> str:
    if math.isnan(value):
        return "nan"
    return format(value, ".9e")


def _grid(stats):
    functions, algorithms, cells = [], [], {}
    for s in stats:
        if s.function_id not in functions:
            functions.append(s.function_id)
        if s.algorithm not in algorithms:
            algorithms.append(s.algorithm)
        cells[(s.function_id, s.algorithm)] = s
    return functions, algorithms, cells


def _rows(stats, with_refs: bool):
    functions, algorithms, cells = _grid(stats)
    header = ["function"]
    for alg in algorithms:
        header += [f"{alg}_AVA", f"{alg}_STD", f"{alg}_best", f"{alg}_worst"]
    refs = reference_table() if with_refs else {}
    if with_refs:
        header += [f"ref_{alg}_{col}" for alg in REFERENCE_ALGORITHMS for col in ("AVA", "STD")]
    rows = []
    for fid in functions:
        row = [fid]
        for alg in algorithms:
            s = cells.get((fid, alg))
            row += [_fmt(s.average), _fmt(s.std), _fmt(s.best), _fmt(s.worst)] if s else [""] * 4
        if with_refs:
            ref = refs.get(fid, {})
            for alg in REFERENCE_ALGORITHMS:
                row += list(ref.get(alg, ("", "")))
        rows.append(row)
    return header, rows


def summary_csv(stats: Sequence[RunStats], with_refs: bool = False) -> str:
    """Comparison table, one row per function id."""
    header, rows = _rows(stats, with_refs)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def summary_text(stats: Sequence[RunStats], with_refs: bool = False) -> str:
    """The comparison table aligned for terminals."""
    header, rows = _rows(stats, with_refs)
    table = [header] + rows
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table]
    return "\n".join(lines) + "\n"


def stats_csv(stats: Sequence[RunStats]) -> str:
    """One row per (function, algorithm) experiment."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["function", "algorithm", "runs", "average", "std", "best", "worst"])
    for s in stats:
        writer.writerow(
            [s.function_id, s.algorithm, s.runs, _fmt(s.average), _fmt(s.std), _fmt(s.best), _fmt(s.worst)]
        )
    return buf.getvalue()


def per_run_csv(stats: Sequence[RunStats]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["function", "algorithm", "run", "seed", "final"])
    for s in stats:
        for k, (seed, final) in enumerate(zip(s.seeds, s.per_run_finals)):
            writer.writerow([s.function_id, s.algorithm, k, seed, _fmt(final)])
    return buf.getvalue()


def convergence_csv(stats: Sequence[RunStats]) -> str:
    """Long-format best-so-far series for external plotting."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["function", "algorithm", "run", "evaluations", "best_so_far"])
    for s in stats:
        for k, curve in enumerate(s.convergence):
            for evals, value in curve:
                writer.writerow([s.function_id, s.algorithm, k, evals, _fmt(value)])
    return buf.getvalue()


def emit_results(
    stats: Sequence[RunStats],
    out_dir,
    with_refs: bool = False,
    config_snapshot: Optional[str] = None,
) -> list[Path]:
    """
    Write ``stats.csv``, ``summary.csv``, ``summary.txt``, ``runs.csv`` and
    ``convergence.csv`` (plus ``config.txt`` when a snapshot is given).

    Raises
    ------
    OSError
        If the destination cannot be written.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "stats.csv": stats_csv(stats),
        "summary.csv": summary_csv(stats, with_refs),
        "summary.txt": f"# std divisor: {STD_DIVISOR}\n" + summary_text(stats, with_refs),
        "runs.csv": per_run_csv(stats),
        "convergence.csv": convergence_csv(stats),
    }
    if config_snapshot is not None:
        files["config.txt"] = config_snapshot
    written = []
    for name, content in files.items():
        path = out / name
        path.write_text(content, encoding="utf-8", newline="\n")
        written.append(path)
    return written
