"""
The two-iteration worked example: maximize ``x1**2 + x2**2`` over integers
in ``[0, 9000]`` with a bundled DecisionScript, plus a plain-text report of
every intermediate table.
"""

from __future__ import annotations

from importlib import resources
from typing import Optional

from .core import CoolingRule, Encoding, ObjectiveProblem, RunConfig, Sense
from .encoding import encode
from .engine import lpbsa_run, summary_average
from .script import DecisionScript

__all__ = [
    "sum_of_squares",
    "case_study_problem",
    "case_study_config",
    "bundled_script_text",
    "load_bundled_script",
    "replay",
    "format_trace",
]


def sum_of_squares(genome) -> int:
    return sum(int(g) * int(g) for g in genome)


def case_study_problem() -> ObjectiveProblem:
    return ObjectiveProblem(
        sum_of_squares,
        bounds=((0, 9000), (0, 9000)),
        sense=Sense.MAXIMIZE,
        encoding=Encoding.INTEGER,
        name="case-study",
    )


def case_study_config(iterations: int = 2) -> RunConfig:
    return RunConfig(
        population_size=16,
        subpopulation_size=8,
        selection_count=4,
        max_iterations=iterations,
        temperature=100.0,
        cooling=CoolingRule.constant(),
        fixed_threshold=0.6,
    )


def bundled_script_text() -> str:
    return resources.files("lpbsa").joinpath("data/case_study.script").read_text(encoding="utf-8")


def load_bundled_script() -> DecisionScript:
    return DecisionScript.parse(bundled_script_text())


def replay(script: Optional[DecisionScript] = None):
    """
    Replay the worked example.

    Returns ``(best, history, averages)`` where ``averages`` holds the
    initial population average followed by each iteration's summary
    average.
    """
    script = load_bundled_script() if script is None else script
    problem = case_study_problem()
    iterations = sum(1 for r in script.data_records() if r.kind == "SUBPOP")
    best, history = lpbsa_run(problem, case_study_config(iterations), script=script)
    initial = history[0].pool if history else ()
    averages = [summary_average([i.fitness for i in initial])] if initial else []
    averages += [rec.summary_average for rec in history]
    return best, history, averages


def _squares_table(rows, out):
    out.append(f"{'id':<6}{'x1':>6}{'x2':>6}{'x1^2':>12}{'x2^2':>12}{'fitness':>12}")
    for label, ind in rows:
        x1, x2 = ind.genome
        out.append(f"{label:<6}{x1:>6}{x2:>6}{x1 * x1:>12}{x2 * x2:>12}{ind.fitness:>12}")


def _binary_table(rows, out):
    out.append(f"{'id':<6}{'x1':>6}{'x2':>6}  {'binary(x1)':<15}{'binary(x2)':<15}")
    for label, ind in rows:
        x1, x2 = ind.genome
        out.append(f"{label:<6}{x1:>6}{x2:>6}  {encode(x1):<15}{encode(x2):<15}")


def format_trace(history, averages) -> str:
    """Render a replay as the sequence of intermediate tables."""
    out = []
    if history:
        out.append("== Initial population ==")
        _squares_table([(i.id, i) for i in history[0].pool], out)
        out.append(f"Average: {averages[0]}")
    for rec in history:
        it = rec.iteration
        out.append("")
        out.append(f"== Iteration {it}: subpopulation ==")
        good_ids = {i.id for i in rec.split.good}
        for k, ind in enumerate(rec.split.members, start=1):
            group = "Good" if ind.id in good_ids else "Bad"
            out.append(f"{ind.id:<6}K{k:<5}{ind.fitness:>12}  {group}")
        out.append(f"Good threshold: {rec.split.good_threshold}")
        out.append(f"Bad threshold: {rec.split.bad_threshold}")

        out.append("")
        out.append(f"== Iteration {it}: partition ==")
        for ind in rec.pool:
            out.append(f"{ind.id:<6}{ind.fitness:>12}  {rec.labels[ind.id]}")

        out.append("")
        out.append(f"== Iteration {it}: selected parents ==")
        for ind in rec.parents:
            out.append(f"{ind.id:<6}{ind.fitness:>12}  {rec.labels[ind.id]}")

        out.append("")
        out.append(f"== Iteration {it}: crossover ==")
        rows = []
        for k, (parent, partner) in enumerate(rec.pairs):
            rows.append((f"E{2 * k + 1}", parent))
            rows.append((f"E{2 * k + 2}", partner))
            rows.append((rec.children[2 * k].id, rec.children[2 * k]))
            rows.append((rec.children[2 * k + 1].id, rec.children[2 * k + 1]))
        _binary_table(rows, out)
        for pos, (parent, partner) in enumerate(rec.pairs):
            out.append(f"E{2 * pos + 1} = {parent.id}, E{2 * pos + 2} = {partner.id}")
        if rec.forced_children:
            out.append("overridden by script: " + " ".join(rec.forced_children))

        out.append("")
        out.append(f"== Iteration {it}: mutation ==")
        _binary_table([(c.id, c) for c in rec.mutated], out)
        for c, bits in zip(rec.mutated, rec.mutation_bits):
            flips = " ".join(f"X{j}@{b if b is not None else '-'}" for j, b in enumerate(bits, start=1))
            out.append(f"{c.id}: {flips}")

        out.append("")
        out.append(f"== Iteration {it}: acceptance (T = {rec.temperature:g}) ==")
        for c, d in zip(rec.mutated, rec.decisions):
            verdict = "accepted" if d.accepted else "rejected"
            note = " (forced by script)" if d.forced else ""
            out.append(f"{c.id:<6}p = {d.probability:.6g}  threshold = {d.threshold:g}  {verdict}{note}")
        out.append("rejected: " + (" ".join(c.id for c in rec.rejected) or "none"))

        out.append("")
        out.append(f"== Iteration {it}: accepted individuals ==")
        _squares_table([(c.id, c) for c in rec.accepted], out)

        out.append("")
        out.append(f"== Iteration {it}: summary ==")
        rows = []
        for k, (parent, partner) in enumerate(rec.pairs):
            rows.append((f"E{2 * k + 1}", parent))
            rows.append((f"E{2 * k + 2}", partner))
        rows += [(c.id, c) for c in rec.accepted]
        _squares_table(rows, out)
        out.append(f"Average: {rec.summary_average}")

    out.append("")
    out.append("== Averages per iteration ==")
    for k, avg in enumerate(averages):
        out.append(f"Iteration {k}  {avg}")
    out.append(" ".join(str(a) for a in averages))
    return "\n".join(out) + "\n"
