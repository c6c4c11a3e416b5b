"""
Metropolis acceptance, cooling schedules and a plain simulated annealing
optimizer used as a baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import (
    CoolingRule,
    Encoding,
    Individual,
    InvalidInputError,
    ObjectiveProblem,
    Sense,
    better,
    evaluate,
    random_genome,
)
from .encoding import ANY_FLIP, NoEligibleBitError, decode, encode, mutate_binary, mutate_real

__all__ = [
    "CoolingRule",
    "AcceptanceDecision",
    "worsening",
    "acceptance_probability",
    "metropolis_accept",
    "cool",
    "SAConfig",
    "default_neighbor",
    "sa_optimize",
]

# exp(-dE/T) underflows for dE/T > ~745; keep the probability strictly positive
_SMALLEST_PROBABILITY = math.ulp(0.0)


@dataclass(frozen=True)
class AcceptanceDecision:
    """Outcome of one Metropolis test, kept for traces."""

    probability: float
    threshold: float
    accepted: bool
    delta: float
    forced: bool = False


def worsening(cost_new, cost_current, sense: Sense):
    """Cost change oriented so that a positive value means ``cost_new`` is worse."""
    if sense is Sense.MAXIMIZE:
        return cost_current - cost_new
    return cost_new - cost_current


def acceptance_probability(cost_new, cost_current, temperature: float, sense: Sense) -> float:
    """
    Probability of moving from ``cost_current`` to ``cost_new``.

    Equal or better candidates get 1. A worse candidate gets
    ``exp(-dE / temperature)`` with ``dE > 0`` the worsening, floored at
    the smallest positive double.
    """
    if not temperature > 0:
        raise InvalidInputError(f"temperature must be positive, got {temperature}")
    delta = worsening(cost_new, cost_current, sense)
    if delta <= 0:
        return 1.0
    return max(math.exp(-float(delta) / temperature), _SMALLEST_PROBABILITY)


def metropolis_accept(
    cost_new, cost_current, temperature: float, threshold: float, sense: Sense
) -> AcceptanceDecision:
    """Accept iff ``threshold < acceptance_probability(...)``."""
    if not 0.0 <= threshold <= 1.0:
        raise InvalidInputError(f"threshold must lie in [0, 1], got {threshold}")
    p = acceptance_probability(cost_new, cost_current, temperature, sense)
    return AcceptanceDecision(p, threshold, threshold < p, worsening(cost_new, cost_current, sense))


def cool(temperature: float, rule: CoolingRule) -> float:
    if rule.kind == "geometric":
        return max(rule.floor, rule.alpha * temperature)
    if rule.kind == "linear":
        return max(rule.floor, temperature - rule.step)
    return temperature


@dataclass(frozen=True)
class SAConfig:
    temperature: float = 10.0
    cooling: CoolingRule = field(default_factory=lambda: CoolingRule.geometric(0.99, 1e-12))
    iterations: int = 1000
    sigma: float = 0.1

    def __post_init__(self):
        if self.temperature <= 0:
            raise InvalidInputError("temperature must be positive")
        if self.iterations < 0:
            raise InvalidInputError("iterations must be >= 0")


def default_neighbor(problem: ObjectiveProblem, sigma: float = 0.1) -> Callable:
    """
    Perturbation used when :func:`sa_optimize` gets no neighbor function.

    Real genomes get a Gaussian step on one coordinate; integer genomes get
    one random bit flip on one gene.
    """
    if problem.encoding is Encoding.REAL:
        def neighbor(genome, rng):
            return mutate_real(genome, sigma, rng, problem.bounds)
    else:
        def neighbor(genome, rng):
            genes = list(genome)
            i = int(rng.integers(len(genes)))
            lo = problem.bounds[i][0]
            # flip bits of the offset from the lower bound so negative bounds work
            try:
                bits, _ = mutate_binary(encode(genes[i] - lo), ANY_FLIP, rng)
            except NoEligibleBitError:
                return genome
            genes[i] = decode(bits) + lo
            return tuple(genes)
    return neighbor


def sa_optimize(
    problem: ObjectiveProblem,
    config: SAConfig,
    rng: np.random.Generator,
    neighbor: Optional[Callable] = None,
    initial: Optional[tuple] = None,
) -> tuple[Individual, list]:
    """
    Simulated annealing with a fresh uniform threshold per step.

    Parameters
    ----------
    problem : ObjectiveProblem
    config : SAConfig
        Initial temperature, cooling rule and number of steps.
    rng : numpy.random.Generator
    neighbor : callable, optional
        ``neighbor(genome, rng) -> genome``. Results are clamped to bounds.
    initial : tuple, optional
        Starting genome; drawn uniformly when omitted.

    Returns
    -------
    best : Individual
        Best individual ever visited.
    curve : list
        Best-so-far fitness after every step, starting with the initial one.
    """
    if neighbor is None:
        neighbor = default_neighbor(problem, config.sigma)
    genome = tuple(initial) if initial is not None else random_genome(problem, rng)
    current = Individual(genome, evaluate(problem, genome), "S0")
    best = current
    curve = [best.fitness]
    t = config.temperature
    for step in range(1, config.iterations + 1):
        cand_genome = problem.clip(neighbor(current.genome, rng))
        cand = Individual(cand_genome, evaluate(problem, cand_genome), f"S{step}")
        decision = metropolis_accept(cand.fitness, current.fitness, t, float(rng.random()), problem.sense)
        if decision.accepted:
            current = cand
            if better(current.fitness, best.fitness, problem.sense):
                best = current
        t = cool(t, config.cooling)
        curve.append(best.fitness)
    return best, curve
