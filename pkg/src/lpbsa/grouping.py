"""
Population partitioning: subpopulation sampling, the Good/Bad split,
threshold labelling of the main population and parent selection.

Comparisons are written for the preference order of the problem sense, so
under minimization "best" means lowest and the inclusive ``<=`` tests of the
maximizing case become ``>=``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import Individual, InvalidInputError, Sense, sort_best_first

__all__ = [
    "GOOD",
    "BAD",
    "IDEAL",
    "SubpopulationSplit",
    "split_subpopulation",
    "sample_subpopulation",
    "classify",
    "partition",
    "select_parents",
]

GOOD = "Good"
BAD = "Bad"
IDEAL = "Ideal"
_PRECEDENCE = (IDEAL, GOOD, BAD)


@dataclass(frozen=True)
class SubpopulationSplit:
    """Subpopulation sorted best-first and cut into two equal halves."""

    members: tuple
    good: tuple
    bad: tuple
    good_threshold: float
    bad_threshold: float


def split_subpopulation(members: Sequence[Individual], sense: Sense) -> SubpopulationSplit:
    """Sort ``members`` best-first and split them into Good and Bad halves."""
    if not members or len(members) % 2:
        raise InvalidInputError(f"subpopulation size must be even and positive, got {len(members)}")
    ordered = tuple(sort_best_first(members, sense))
    half = len(ordered) // 2
    good, bad = ordered[:half], ordered[half:]
    return SubpopulationSplit(ordered, good, bad, good[0].fitness, bad[0].fitness)


def sample_subpopulation(
    population: Sequence[Individual],
    size: int,
    sense: Sense,
    rng: Optional[np.random.Generator] = None,
    ids: Optional[Sequence[str]] = None,
) -> SubpopulationSplit:
    """
    Draw ``size`` distinct individuals and split them.

    Without ``ids`` the members are drawn uniformly without replacement from
    ``rng``. With ``ids`` the members are looked up by label instead, which
    is how scripted replays pick them.
    """
    if size % 2 or size < 2:
        raise InvalidInputError(f"subpopulation size must be a positive even integer, got {size}")
    if size > len(population):
        raise InvalidInputError(f"subpopulation size {size} exceeds population {len(population)}")
    if ids is not None:
        by_id = {ind.id: ind for ind in population}
        if len(ids) != size or len(set(ids)) != size:
            raise InvalidInputError(f"expected {size} distinct ids, got {list(ids)}")
        missing = [i for i in ids if i not in by_id]
        if missing:
            raise InvalidInputError(f"unknown individuals {missing}")
        members = [by_id[i] for i in ids]
    else:
        if rng is None:
            raise InvalidInputError("either rng or ids is required")
        idx = rng.choice(len(population), size=size, replace=False)
        members = [population[int(i)] for i in idx]
    return split_subpopulation(members, sense)


def classify(fitness, split: SubpopulationSplit, sense: Sense) -> str:
    """Label one fitness value against the split thresholds."""
    if sense is Sense.MAXIMIZE:
        if fitness <= split.bad_threshold:
            return BAD
        if fitness <= split.good_threshold:
            return GOOD
        return IDEAL
    if fitness >= split.bad_threshold:
        return BAD
    if fitness >= split.good_threshold:
        return GOOD
    return IDEAL


def partition(population: Sequence[Individual], split: SubpopulationSplit, sense: Sense) -> dict:
    """Map every individual id to ``"Good"``, ``"Bad"`` or ``"Ideal"``."""
    return {ind.id: classify(ind.fitness, split, sense) for ind in population}


def select_parents(
    labels: dict, population: Sequence[Individual], n: int, sense: Sense
) -> list[Individual]:
    """
    Pick ``n`` parents: Ideal members first, then Good, then Bad, each
    group taken best-first.
    """
    if n > len(population):
        raise InvalidInputError(f"cannot select {n} parents from {len(population)} individuals")
    chosen = []
    for group in _PRECEDENCE:
        members = [ind for ind in population if labels[ind.id] == group]
        chosen.extend(sort_best_first(members, sense))
        if len(chosen) >= n:
            break
    return chosen[:n]
