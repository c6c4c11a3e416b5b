"""
Command-line entry point.

Subcommands::

    lpbsa run      single optimization run
    lpbsa bench    multi-run experiments written to an output directory
    lpbsa trace    replay the bundled worked example (or another script)
    lpbsa compare  LPBSA, LPB and SA side by side on one function

Exit codes: 0 success, 2 usage, 3 replay desync, 4 I/O.

Settings can also come from ``--config FILE``, a flat ``key = value`` file
whose keys are the long flag names without dashes (``pop = 20``,
``cooling = geometric``). Flags override the file, which overrides the
defaults.
"""

from __future__ import annotations

import argparse
import sys
from numbers import Integral
from pathlib import Path

from .casestudy import case_study_config, case_study_problem, format_trace, load_bundled_script, replay
from .core import CoolingRule, InvalidInputError, RunConfig, make_rng
from .benchmarks import REGISTRY, ids, lookup
from .engine import evaluations_per_iteration, lpb_run, lpbsa_run
from .harness import ALGORITHMS, ExperimentConfig, emit_results, run_experiment, run_single, summary_text
from .script import DecisionScript, ReplayDesyncError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DESYNC = 3
EXIT_IO = 4

# Defaults shared by run, bench and compare; keys double as config-file keys.
DEFAULTS = {
    "alg": "lpbsa",
    "tf": "TF1",
    "dim": None,
    "pop": 30,
    "sub": 10,
    "select": 4,
    "iters": 200,
    "evaluations": None,
    "temperature": 1.0,
    "cooling": "geometric",
    "alpha": 0.95,
    "step": 1.0,
    "floor": 1e-12,
    "threshold": None,
    "sigma": 0.1,
    "replacement": "elitist",
    "seed": None,
    "runs": 30,
    "workers": 1,
    "out": "results",
}

_INT_KEYS = {"dim", "pop", "sub", "select", "iters", "evaluations", "seed", "runs", "workers"}
_FLOAT_KEYS = {"temperature", "alpha", "step", "floor", "threshold", "sigma"}


class UsageError(Exception):
    pass


def _coerce(key: str, value):
    if value is None or value == "":
        return None
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    return str(value)


def read_config_file(path) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _coerce(key, value)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return out


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config file and explicit flags, in that order."""
    settings = dict(DEFAULTS)
    if getattr(args, "config", None):
        settings.update(read_config_file(args.config))
    for key in DEFAULTS:
        if key in vars(args):
            settings[key] = getattr(args, key)
    return settings


def snapshot(settings: dict) -> str:
    """Settings as a config file; the output path is left out."""
    return "".join(
        f"{k} = {'' if v is None else v}\n" for k, v in sorted(settings.items()) if k != "out"
    )


def _cooling(settings) -> CoolingRule:
    kind = settings["cooling"]
    if kind == "geometric":
        return CoolingRule.geometric(settings["alpha"], settings["floor"])
    if kind == "linear":
        return CoolingRule.linear(settings["step"], settings["floor"])
    if kind == "constant":
        return CoolingRule.constant()
    raise UsageError(f"unknown cooling rule {kind!r}")


def run_config(settings) -> RunConfig:
    return RunConfig(
        population_size=settings["pop"],
        subpopulation_size=settings["sub"],
        selection_count=settings["select"],
        max_iterations=settings["iters"],
        temperature=settings["temperature"],
        cooling=_cooling(settings),
        fixed_threshold=settings["threshold"],
        sigma=settings["sigma"],
        replacement=settings["replacement"],
        seed=settings["seed"] if settings["seed"] is not None else 0,
    )


def experiment_config(settings) -> ExperimentConfig:
    return ExperimentConfig(
        run=run_config(settings),
        dimension=settings["dim"],
        evaluations=settings["evaluations"],
        base_seed=settings["seed"] if settings["seed"] is not None else 0,
    )


def _algorithms(value: str) -> list[str]:
    algs = [a.strip().lower() for a in value.split(",") if a.strip()]
    for a in algs:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r} (choose from {', '.join(ALGORITHMS)})")
    if not algs:
        raise UsageError("no algorithm given")
    return algs


def _functions(value: str) -> list[str]:
    if value.strip().lower() == "all":
        return ids()
    return [lookup(k).id for k in value.split(",") if k.strip()]


def _genome_text(genome) -> str:
    return "[" + ", ".join(str(int(g)) if isinstance(g, Integral) else repr(float(g)) for g in genome) + "]"


def cmd_run(args, out) -> int:
    settings = resolve(args)
    algs = _algorithms(settings["alg"])
    if len(algs) != 1:
        raise UsageError("run takes a single algorithm")
    alg = algs[0]
    seed = settings["seed"] if settings["seed"] is not None else 0
    if args.case_study:
        if alg == "sa":
            raise UsageError("the case study runs with lpbsa or lpb")
        problem = case_study_problem()
        cfg = case_study_config(settings["iters"])
        engine = lpbsa_run if alg == "lpbsa" else lpb_run
        best, history = engine(problem, cfg, make_rng(seed))
        label, iterations = "case-study", len(history)
        evaluations = cfg.population_size + iterations * evaluations_per_iteration(cfg)
    else:
        bf = lookup(settings["tf"])
        exp = experiment_config(settings)
        best, _ = run_single(alg, bf.id, exp, 0)
        label = f"{bf.id} ({bf.name})"
        iterations = exp.iterations()
        evaluations = exp.evaluation_budget()
        if alg == "sa":
            iterations = evaluations - 1
    print(f"algorithm: {alg}", file=out)
    print(f"function: {label}", file=out)
    print(f"seed: {seed}", file=out)
    print(f"iterations: {iterations}", file=out)
    print(f"evaluations: {evaluations}", file=out)
    print(f"best fitness: {best.fitness!r}", file=out)
    print(f"best genome: {_genome_text(best.genome)}", file=out)
    return EXIT_OK


def cmd_trace(args, out) -> int:
    script = DecisionScript.load(args.script) if args.script else load_bundled_script()
    _, history, averages = replay(script)
    text = format_trace(history, averages)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        out.write(text)
    return EXIT_OK


def _list_functions(out) -> None:
    print(f"{'id':<5} {'name':<16} {'dim':>4}  {'bounds':<22} optimum", file=out)
    for bf in REGISTRY.values():
        dim = bf.check_dimension(None)
        axes = sorted(set(bf.bounds_for(dim)), key=bf.bounds_for(dim).index)
        bounds = " ".join(f"[{lo:g}, {hi:g}]" for lo, hi in axes)
        print(f"{bf.id:<5} {bf.name:<16} {dim:>4}  {bounds:<22} {bf.known_optimum(dim)!r}", file=out)


def cmd_bench(args, out) -> int:
    if args.list:
        _list_functions(out)
        return EXIT_OK
    settings = resolve(args)
    if settings["seed"] is None:
        raise UsageError("bench requires --seed")
    algs = _algorithms(settings["alg"])
    functions = _functions(settings["tf"])
    exp = experiment_config(settings)
    stats = []
    for fid in functions:
        for alg in algs:
            stats.append(run_experiment(alg, fid, exp, settings["runs"], workers=settings["workers"]))
    written = emit_results(stats, settings["out"], with_refs=args.with_paper_refs, config_snapshot=snapshot(settings))
    out.write(summary_text(stats, with_refs=False))
    for path in written:
        print(f"wrote {path}", file=out)
    return EXIT_OK


def cmd_compare(args, out) -> int:
    settings = resolve(args)
    bf = lookup(settings["tf"])
    exp = experiment_config(settings)
    stats = [run_experiment(alg, bf.id, exp, settings["runs"], workers=settings["workers"]) for alg in ALGORITHMS]
    print(f"{bf.id} ({bf.name}), {settings['runs']} runs, base seed {exp.base_seed}, "
          f"{exp.evaluation_budget()} evaluations per run", file=out)
    out.write(summary_text(stats, with_refs=args.with_paper_refs))
    return EXIT_OK


def _add_run_flags(p: argparse.ArgumentParser, multi_alg: bool) -> None:
    s = argparse.SUPPRESS
    p.add_argument("--config", default=None, help="flat key = value settings file")
    p.add_argument("--alg", default=s, help=("comma-separated " if multi_alg else "") + "algorithm: lpbsa, lpb or sa (default lpbsa)")
    p.add_argument("--tf", default=s, help="benchmark id or name" + (", comma-separated, or 'all'" if multi_alg else "") + " (default TF1)")
    p.add_argument("--dim", type=int, default=s, help="dimension for scalable functions (default 30)")
    p.add_argument("--pop", type=int, default=s, help="population size (default 30)")
    p.add_argument("--sub", type=int, default=s, help="subpopulation size, even (default 10)")
    p.add_argument("--select", type=int, default=s, help="parents selected per iteration (default 4)")
    p.add_argument("--iters", type=int, default=s, help="iterations (default 200)")
    p.add_argument("--evaluations", type=int, default=s, help="evaluation budget; overrides --iters (default none)")
    p.add_argument("--temperature", type=float, default=s, help="initial temperature (default 1.0)")
    p.add_argument("--cooling", choices=("geometric", "linear", "constant"), default=s, help="cooling rule (default geometric)")
    p.add_argument("--alpha", type=float, default=s, help="geometric factor (default 0.95)")
    p.add_argument("--step", type=float, default=s, help="linear decrement (default 1.0)")
    p.add_argument("--floor", type=float, default=s, help="temperature floor (default 1e-12)")
    p.add_argument("--threshold", type=float, default=s, help="fixed acceptance threshold in [0, 1] (default fresh uniform)")
    p.add_argument("--sigma", type=float, default=s, help="real mutation scale relative to the range (default 0.1)")
    p.add_argument("--replacement", choices=("elitist", "replace_worst"), default=s, help="population update (default elitist)")
    p.add_argument("--seed", type=int, default=s, help="seed or base seed" + (" (required)" if multi_alg else " (default 0)"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpbsa", description="LPB with simulated annealing acceptance.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="single optimization run")
    _add_run_flags(p, multi_alg=False)
    p.add_argument("--case-study", action="store_true", help="optimize the worked example problem instead of --tf")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bench", help="multi-run experiments")
    _add_run_flags(p, multi_alg=True)
    p.add_argument("--runs", type=int, default=argparse.SUPPRESS, help="runs per experiment (default 30)")
    p.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="worker processes (default 1)")
    p.add_argument("--out", default=argparse.SUPPRESS, help="output directory (default results)")
    p.add_argument("--with-paper-refs", action="store_true", help="append the published reference constants")
    p.add_argument("--list", action="store_true", help="list the benchmark functions and exit")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("trace", help="replay the worked example")
    p.add_argument("--script", default=None, help="DecisionScript file (default: bundled)")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("compare", help="LPBSA, LPB and SA on one function")
    _add_run_flags(p, multi_alg=False)
    p.add_argument("--runs", type=int, default=argparse.SUPPRESS, help="runs per algorithm (default 30)")
    p.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="worker processes (default 1)")
    p.add_argument("--with-paper-refs", action="store_true", help="append the published reference constants")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ReplayDesyncError as exc:
        print(f"lpbsa: replay desync: {exc}", file=err)
        return EXIT_DESYNC
    except (UsageError, InvalidInputError) as exc:
        print(f"lpbsa {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"lpbsa: I/O error: {exc}", file=err)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
