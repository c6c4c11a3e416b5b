"""
LPBSA: Learner Performance-based Behavior optimization with a simulated
annealing acceptance filter, its LPB and SA baselines, and a classical
benchmark suite.
"""

from .annealing import (
    AcceptanceDecision,
    SAConfig,
    acceptance_probability,
    cool,
    metropolis_accept,
    sa_optimize,
)
from .core import (
    BoundsViolationError,
    CoolingRule,
    Encoding,
    Individual,
    InvalidInputError,
    ObjectiveProblem,
    RunConfig,
    Sense,
    better,
    evaluate,
    make_rng,
)
from .engine import IterationRecord, lpb_run, lpbsa_run, summary_average, update_population
from .script import DecisionScript, ReplayDesyncError

__version__ = "0.1.0"
