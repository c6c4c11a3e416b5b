"""
Domain types shared by the optimizers: solutions, problems, run configuration
and the random-stream contract.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "Sense",
    "Encoding",
    "InvalidInputError",
    "BoundsViolationError",
    "Individual",
    "ObjectiveProblem",
    "CoolingRule",
    "RunConfig",
    "make_rng",
    "random_genome",
    "better",
    "evaluate",
    "rank_key",
    "sort_best_first",
]


class InvalidInputError(ValueError):
    """Raised when an operation receives input outside its contract."""


class BoundsViolationError(InvalidInputError):
    """Raised when a genome lies outside the problem's box bounds."""


class Sense(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


class Encoding(enum.Enum):
    INTEGER = "int"
    REAL = "real"


def better(a, b, sense: Sense) -> bool:
    """Return True iff fitness ``a`` is strictly preferable to ``b``."""
    if sense is Sense.MAXIMIZE:
        return a > b
    return a < b


@dataclass(frozen=True)
class Individual:
    """
    Candidate solution.

    Parameters
    ----------
    genome : tuple
        Decision values, ints for integer problems and floats otherwise.
    fitness : int or float or None
        Cached objective value.
    id : str
        Label used in traces, e.g. ``"B13"`` or ``"C1"``.
    """

    genome: tuple
    fitness: Optional[float] = None
    id: str = ""

    def relabel(self, new_id: str) -> "Individual":
        return Individual(self.genome, self.fitness, new_id)


@dataclass(frozen=True)
class ObjectiveProblem:
    """
    Box-bounded single-objective problem.

    ``objective`` maps a genome tuple to a number. For integer encodings it
    should stay in integer arithmetic so results are exact.
    """

    objective: Callable[[tuple], float]
    bounds: tuple
    sense: Sense = Sense.MINIMIZE
    encoding: Encoding = Encoding.REAL
    name: str = ""

    def __post_init__(self):
        bounds = tuple((lo, hi) for lo, hi in self.bounds)
        if not bounds:
            raise InvalidInputError("problem needs at least one dimension")
        for lo, hi in bounds:
            if lo > hi:
                raise InvalidInputError(f"lower bound {lo} exceeds upper bound {hi}")
        object.__setattr__(self, "bounds", bounds)

    @property
    def dimension(self) -> int:
        return len(self.bounds)

    @property
    def lower(self) -> np.ndarray:
        return np.array([lo for lo, _ in self.bounds], dtype=float)

    @property
    def upper(self) -> np.ndarray:
        return np.array([hi for _, hi in self.bounds], dtype=float)

    def clip(self, genome: Sequence) -> tuple:
        """Clamp every component into its bounds."""
        return tuple(min(max(g, lo), hi) for g, (lo, hi) in zip(genome, self.bounds))

    def contains(self, genome: Sequence) -> bool:
        return len(genome) == self.dimension and all(
            lo <= g <= hi for g, (lo, hi) in zip(genome, self.bounds)
        )


def evaluate(problem: ObjectiveProblem, genome: Sequence):
    """
    Evaluate ``problem`` at ``genome`` after checking shape and bounds.

    Raises
    ------
    InvalidInputError
        If the genome length differs from the problem dimension.
    BoundsViolationError
        If any component lies outside its bounds.
    """
    genome = tuple(genome)
    if len(genome) != problem.dimension:
        raise InvalidInputError(
            f"genome has {len(genome)} components, problem dimension is {problem.dimension}"
        )
    for i, (g, (lo, hi)) in enumerate(zip(genome, problem.bounds)):
        if not lo <= g <= hi:
            raise BoundsViolationError(f"component {i} = {g} outside [{lo}, {hi}]")
    return problem.objective(genome)


_ID_RE = re.compile(r"(\d+)")


def _natural_key(label: str):
    return tuple(int(tok) if tok.isdigit() else tok for tok in _ID_RE.split(label))


def rank_key(sense: Sense):
    """Sort key putting the best fitness first, ties broken by natural id order."""
    sign = -1 if sense is Sense.MAXIMIZE else 1

    def key(ind: Individual):
        return (sign * ind.fitness, _natural_key(ind.id))

    return key


def sort_best_first(individuals, sense: Sense) -> list:
    return sorted(individuals, key=rank_key(sense))


@dataclass(frozen=True)
class CoolingRule:
    """
    Temperature update applied once per iteration.

    ``kind`` is ``"geometric"`` (``T <- alpha * T``), ``"linear"``
    (``T <- T - step``) or ``"constant"``. The result never drops below
    ``floor``.
    """

    kind: str = "constant"
    alpha: float = 0.95
    step: float = 1.0
    floor: float = 0.0

    def __post_init__(self):
        if self.kind not in ("geometric", "linear", "constant"):
            raise InvalidInputError(f"unknown cooling kind {self.kind!r}")
        if self.kind == "geometric" and not 0.0 < self.alpha < 1.0:
            raise InvalidInputError("geometric alpha must lie in (0, 1)")
        if self.kind == "linear" and self.step <= 0:
            raise InvalidInputError("linear step must be positive")
        if self.floor < 0:
            raise InvalidInputError("temperature floor must be >= 0")

    @classmethod
    def geometric(cls, alpha: float, floor: float = 0.0) -> "CoolingRule":
        return cls("geometric", alpha=alpha, floor=floor)

    @classmethod
    def linear(cls, step: float, floor: float = 0.0) -> "CoolingRule":
        return cls("linear", step=step, floor=floor)

    @classmethod
    def constant(cls, floor: float = 0.0) -> "CoolingRule":
        return cls("constant", floor=floor)


@dataclass(frozen=True)
class RunConfig:
    """
    Settings for one LPB/LPBSA run.

    Parameters
    ----------
    population_size : int
        Size of the main population.
    subpopulation_size : int
        Size of the randomly drawn subpopulation; must be even.
    selection_count : int
        Number of parents ``N`` picked per iteration.
    max_iterations : int
        Iteration budget, the only stopping rule.
    temperature : float
        Initial annealing temperature.
    cooling : CoolingRule
        Per-iteration temperature update.
    fixed_threshold : float or None
        Acceptance threshold used for every child. ``None`` draws a fresh
        uniform number per child.
    sigma : float
        Gaussian mutation scale for real genomes, relative to bound width.
    replacement : str
        ``"elitist"`` merges children with the population and keeps the
        best; ``"replace_worst"`` lets every accepted child displace one of
        the worst incumbents.
    seed : int
        Seed of the run's random stream.
    """

    population_size: int = 30
    subpopulation_size: int = 10
    selection_count: int = 4
    max_iterations: int = 200
    temperature: float = 1.0
    cooling: CoolingRule = field(default_factory=lambda: CoolingRule.geometric(0.95, 1e-12))
    fixed_threshold: Optional[float] = None
    sigma: float = 0.1
    replacement: str = "elitist"
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 1:
            raise InvalidInputError("population_size must be positive")
        if self.subpopulation_size < 2 or self.subpopulation_size % 2:
            raise InvalidInputError("subpopulation_size must be a positive even integer")
        if self.subpopulation_size > self.population_size:
            raise InvalidInputError("subpopulation_size exceeds population_size")
        if not 1 <= self.selection_count <= self.population_size:
            raise InvalidInputError("selection_count must lie in [1, population_size]")
        if self.max_iterations < 0:
            raise InvalidInputError("max_iterations must be >= 0")
        if self.temperature <= 0:
            raise InvalidInputError("temperature must be positive")
        if self.fixed_threshold is not None and not 0.0 <= self.fixed_threshold <= 1.0:
            raise InvalidInputError("fixed_threshold must lie in [0, 1]")
        if self.sigma < 0:
            raise InvalidInputError("sigma must be >= 0")
        if self.replacement not in ("elitist", "replace_worst"):
            raise InvalidInputError(f"unknown replacement rule {self.replacement!r}")


def make_rng(seed: int) -> np.random.Generator:
    """
    Random stream for one run.

    Uses numpy's PCG64 bit generator seeded through ``SeedSequence``, which is
    platform independent. Run ``k`` of an experiment with base seed ``s`` uses
    ``make_rng(s + k)`` so every run can be reproduced on its own.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def random_genome(problem: ObjectiveProblem, rng: np.random.Generator) -> tuple:
    """Uniform random point inside the problem bounds."""
    if problem.encoding is Encoding.INTEGER:
        return tuple(int(rng.integers(lo, hi + 1)) for lo, hi in problem.bounds)
    return tuple(float(rng.uniform(lo, hi)) for lo, hi in problem.bounds)
