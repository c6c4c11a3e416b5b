"""
LPB and LPBSA main loops.

Each iteration samples a subpopulation, labels the main population
Good/Bad/Ideal against it, selects parents, crosses each parent with a
member of the subpopulation's Good half, mutates the children and merges
them back into the population. LPBSA additionally passes every mutated
child through a Metropolis test against its pre-mutation fitness; LPB
accepts every child.

Both loops consume the random stream identically, so LPBSA with a fixed
threshold of 0 reproduces an LPB run exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .annealing import AcceptanceDecision, cool, metropolis_accept
from .core import (
    Encoding,
    Individual,
    InvalidInputError,
    ObjectiveProblem,
    RunConfig,
    Sense,
    better,
    evaluate,
    make_rng,
    random_genome,
    sort_best_first,
)
from .encoding import (
    ANY_FLIP,
    ZERO_TO_ONE,
    NoEligibleBitError,
    crossover_binary,
    crossover_real,
    decode,
    encode,
    mutate_binary,
    mutate_real,
)
from .grouping import SubpopulationSplit, partition, sample_subpopulation, select_parents
from .script import DecisionScript, ReplayDesyncError, ScriptCursor

__all__ = [
    "IterationRecord",
    "lpbsa_run",
    "lpb_run",
    "update_population",
    "summary_average",
    "evaluations_per_iteration",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IterationRecord:
    """
    Everything one iteration did.

    ``summary_average`` is the truncated mean over parents, partners and
    accepted children (the per-iteration figure of the worked example);
    ``population_average`` is the mean over the updated population.
    ``pool`` is the population the subpopulation was drawn from.
    """

    iteration: int
    temperature: float
    pool: tuple
    split: SubpopulationSplit
    labels: dict
    parents: tuple
    pairs: tuple
    children: tuple
    forced_children: tuple
    mutated: tuple
    mutation_bits: tuple
    decisions: tuple
    accepted: tuple
    survivors: tuple
    summary_average: float
    population_average: float
    best: Individual
    evaluations: int

    @property
    def rejected(self) -> tuple:
        kept = {c.id for c in self.accepted}
        return tuple(c for c in self.mutated if c.id not in kept)


def summary_average(values: Sequence):
    """
    Arithmetic mean; integer inputs give an integer truncated toward zero.
    """
    values = list(values)
    if not values:
        raise InvalidInputError("cannot average an empty set")
    if all(isinstance(v, (int, np.integer)) for v in values):
        total = sum(int(v) for v in values)
        q = abs(total) // len(values)
        return q if total >= 0 else -q
    return float(np.mean(np.asarray(values, dtype=float)))


def update_population(
    population: Sequence[Individual],
    accepted: Sequence[Individual],
    sense: Sense,
    size: Optional[int] = None,
    rule: str = "elitist",
) -> list[Individual]:
    """Merge incumbents with accepted children and keep the best ``size``."""
    size = len(population) if size is None else size
    if rule == "elitist":
        return sort_best_first(list(population) + list(accepted), sense)[:size]
    if rule != "replace_worst":
        raise InvalidInputError(f"unknown replacement rule {rule!r}")
    newcomers = sort_best_first(accepted, sense)[:size]
    kept = sort_best_first(population, sense)[: max(size - len(newcomers), 0)]
    return sort_best_first(kept + newcomers, sense)


def evaluations_per_iteration(config: RunConfig) -> int:
    """Objective calls per iteration: 2N children, before and after mutation."""
    return 4 * config.selection_count


def _mutation_direction(sense: Sense) -> str:
    return ZERO_TO_ONE if sense is Sense.MAXIMIZE else ANY_FLIP


def _initial_population(problem, config, rng, cursor):
    if cursor is None:
        genomes = [random_genome(problem, rng) for _ in range(config.population_size)]
        ids = [f"B{i}" for i in range(1, config.population_size + 1)]
    else:
        genomes, ids = [], []
        while (rec := cursor.take_optional("INDIV")) is not None:
            try:
                genome = tuple(int(v) if problem.encoding is Encoding.INTEGER else float(v) for v in rec.args[1:])
            except ValueError:
                raise ReplayDesyncError(f"bad genes in {rec.raw.strip()!r}", rec.line) from None
            ids.append(rec.args[0])
            genomes.append(genome)
        if len(genomes) != config.population_size:
            raise ReplayDesyncError(
                f"script holds {len(genomes)} initial individuals, config expects {config.population_size}"
            )
    return [Individual(g, evaluate(problem, g), i) for g, i in zip(genomes, ids)]


def _resolve_partner(label, split, pool, rec):
    if label.startswith("K") and label[1:].isdigit():
        k = int(label[1:])
        if 1 <= k <= len(split.members):
            return split.members[k - 1]
    for ind in pool:
        if ind.id == label:
            return ind
    raise ReplayDesyncError(f"unknown partner {label!r}", rec.line)


def _cross_integer(problem, g1, g2):
    c1, c2 = [], []
    for a, b, (lo, _) in zip(g1, g2, problem.bounds):
        x, y = crossover_binary(encode(a - lo), encode(b - lo))
        c1.append(decode(x) + lo)
        c2.append(decode(y) + lo)
    return problem.clip(c1), problem.clip(c2)


def _mutate_integer(problem, genome, cid, direction, rng, cursor):
    genes, bits = [], []
    for j, (g, (lo, _)) in enumerate(zip(genome, problem.bounds), start=1):
        position = None
        if cursor is not None:
            rec = cursor.take("MUTBIT", cid)
            if rec.args[1] != f"X{j}":
                raise ReplayDesyncError(f"expected gene X{j} for {cid}, found {rec.args[1]}", rec.line)
            if rec.args[2] == "-":
                genes.append(g)
                bits.append(None)
                continue
            position = int(rec.args[2])
        try:
            mutated, pos = mutate_binary(encode(g - lo), direction, rng, position)
        except NoEligibleBitError as exc:
            if position is not None:
                raise ReplayDesyncError(str(exc), rec.line) from None
            genes.append(g)
            bits.append(None)
            continue
        except InvalidInputError as exc:
            raise ReplayDesyncError(str(exc), rec.line) from None
        genes.append(decode(mutated) + lo)
        bits.append(pos)
    return problem.clip(genes), tuple(bits)


def _run(problem: ObjectiveProblem, config: RunConfig, rng, script, anneal: bool):
    if rng is None:
        rng = make_rng(config.seed)
    cursor: Optional[ScriptCursor] = None
    if script is not None:
        if problem.encoding is not Encoding.INTEGER:
            raise InvalidInputError("scripted replay needs an integer-encoded problem")
        cursor = script.cursor() if isinstance(script, DecisionScript) else script
    sense = problem.sense
    direction = _mutation_direction(sense)

    population = _initial_population(problem, config, rng, cursor)
    initial = tuple(population)
    best = sort_best_first(population, sense)[0]
    evaluations = len(population)
    temperature = config.temperature
    history = []

    for it in range(1, config.max_iterations + 1):
        # a scripted replay keeps drawing from the initial pool, as the worked example does
        pool = initial if cursor is not None else tuple(population)

        ids = cursor.take("SUBPOP").args if cursor is not None else None
        try:
            split = sample_subpopulation(pool, config.subpopulation_size, sense, rng, ids=ids)
        except InvalidInputError as exc:
            if cursor is None:
                raise
            raise ReplayDesyncError(str(exc)) from None
        labels = partition(pool, split, sense)
        parents = select_parents(labels, pool, config.selection_count, sense)

        pairs = []
        for i, parent in enumerate(parents):
            if cursor is not None:
                rec = cursor.take("PAIR", parent.id)
                partner = _resolve_partner(rec.args[1], split, pool, rec)
            else:
                partner = split.good[i % len(split.good)]
            pairs.append((parent, partner))

        genomes = []
        for parent, partner in pairs:
            if problem.encoding is Encoding.INTEGER:
                genomes.extend(_cross_integer(problem, parent.genome, partner.genome))
            else:
                genomes.extend(crossover_real(parent.genome, partner.genome, rng, bounds=problem.bounds))
        child_ids = [f"C{k}" for k in range(1, len(genomes) + 1)]

        forced = []
        if cursor is not None:
            while (rec := cursor.take_optional("CHILD")) is not None:
                if rec.args[0] not in child_ids:
                    raise ReplayDesyncError(f"no child {rec.args[0]} in iteration {it}", rec.line)
                k = child_ids.index(rec.args[0])
                genomes[k] = tuple(int(v) for v in rec.args[1:])
                if len(genomes[k]) != problem.dimension:
                    raise ReplayDesyncError(f"{rec.args[0]} override has wrong dimension", rec.line)
                forced.append(rec.args[0])
        children = [Individual(g, evaluate(problem, g), cid) for g, cid in zip(genomes, child_ids)]

        mutated, bits = [], []
        for child in children:
            if problem.encoding is Encoding.INTEGER:
                genome, pos = _mutate_integer(problem, child.genome, child.id, direction, rng, cursor)
            else:
                genome, pos = mutate_real(child.genome, config.sigma, rng, problem.bounds), None
            mutated.append(Individual(genome, evaluate(problem, genome), child.id))
            bits.append(pos)
        evaluations += 2 * len(children)

        decisions, accepted = [], []
        for child, mut in zip(children, mutated):
            if not anneal:
                accepted.append(mut)
                continue
            threshold = config.fixed_threshold
            rec = cursor.take_optional("THRESHOLD", mut.id) if cursor is not None else None
            if rec is not None:
                threshold = float(rec.args[1])
            elif threshold is None:
                threshold = float(rng.random())
            decision = metropolis_accept(mut.fitness, child.fitness, temperature, threshold, sense)
            verdict = cursor.take_verdict(mut.id) if cursor is not None else None
            if verdict is not None:
                decision = replace(decision, accepted=verdict.kind == "ACCEPT", forced=True)
            decisions.append(decision)
            if decision.accepted:
                accepted.append(mut)

        summary = [v for pair in pairs for v in (pair[0].fitness, pair[1].fitness)]
        summary += [c.fitness for c in accepted]
        newcomers = [c.relabel(f"{c.id}@{it}") for c in accepted]
        population = update_population(population, newcomers, sense, config.population_size, config.replacement)
        for c in newcomers:
            if better(c.fitness, best.fitness, sense):
                best = c

        history.append(
            IterationRecord(
                iteration=it,
                temperature=temperature,
                pool=pool,
                split=split,
                labels=labels,
                parents=tuple(parents),
                pairs=tuple(pairs),
                children=tuple(children),
                forced_children=tuple(forced),
                mutated=tuple(mutated),
                mutation_bits=tuple(bits),
                decisions=tuple(decisions),
                accepted=tuple(accepted),
                survivors=tuple(population),
                summary_average=summary_average(summary),
                population_average=summary_average([p.fitness for p in population]),
                best=best,
                evaluations=evaluations,
            )
        )
        log.debug("iteration %d best %s", it, best.fitness)
        temperature = cool(temperature, config.cooling)

    if cursor is not None:
        cursor.finish()
    return best, history


def lpbsa_run(
    problem: ObjectiveProblem,
    config: RunConfig,
    rng: Optional[np.random.Generator] = None,
    script: Optional[DecisionScript] = None,
) -> tuple[Individual, list[IterationRecord]]:
    """
    Run LPBSA.

    Parameters
    ----------
    problem : ObjectiveProblem
    config : RunConfig
    rng : numpy.random.Generator, optional
        Defaults to ``make_rng(config.seed)``.
    script : DecisionScript, optional
        Replays recorded choices instead of drawing them. Requires an
        integer-encoded problem.

    Returns
    -------
    best : Individual
        Best individual that ever entered the population.
    history : list of IterationRecord

    Raises
    ------
    ReplayDesyncError
        If the script does not match the engine's consumption order.
    """
    return _run(problem, config, rng, script, anneal=True)


def lpb_run(
    problem: ObjectiveProblem,
    config: RunConfig,
    rng: Optional[np.random.Generator] = None,
    script: Optional[DecisionScript] = None,
) -> tuple[Individual, list[IterationRecord]]:
    """Plain LPB: the LPBSA loop without the acceptance filter."""
    return _run(problem, config, rng, script, anneal=False)
