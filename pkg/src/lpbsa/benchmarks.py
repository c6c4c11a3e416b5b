"""
Classical 19-function benchmark suite (TF1..TF19).

TF1-TF13 are scalable (default dimension 30), TF14-TF19 have a fixed
dimension. All are minimized. TF7 adds uniform noise in ``[0, 1)`` drawn
from a caller-supplied generator.

The ordering is the common one of the metaheuristics literature, where TF2
is Schwefel's problem 2.22 and Rastrigin is TF9; some texts call TF2
"Rastrigin", so ``lookup("rastrigin")`` also resolves by name.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .core import Encoding, InvalidInputError, ObjectiveProblem, Sense

__all__ = [
    "BenchmarkFunction",
    "REGISTRY",
    "ids",
    "lookup",
    "evaluate_tf",
    "DEFAULT_DIMENSION",
]

DEFAULT_DIMENSION = 30


def sphere(x):
    return float(np.sum(x * x))


def schwefel_2_22(x):
    a = np.abs(x)
    return float(np.sum(a) + np.prod(a))


def schwefel_1_2(x):
    return float(np.sum(np.cumsum(x) ** 2))


def schwefel_2_21(x):
    return float(np.max(np.abs(x)))


def rosenbrock(x):
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (x[:-1] - 1.0) ** 2))


def step(x):
    return float(np.sum(np.floor(x + 0.5) ** 2))


def quartic(x):
    return float(np.sum(np.arange(1, x.size + 1) * x**4))


def schwefel_2_26(x):
    return float(np.sum(-x * np.sin(np.sqrt(np.abs(x)))))


def rastrigin(x):
    return float(np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x) + 10.0))


def ackley(x):
    n = x.size
    return float(
        -20.0 * np.exp(-0.2 * np.sqrt(np.sum(x * x) / n))
        - np.exp(np.sum(np.cos(2.0 * np.pi * x)) / n)
        + 20.0
        + np.e
    )


def griewank(x):
    i = np.arange(1, x.size + 1)
    return float(np.sum(x * x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))) + 1.0)


def _u(x, a, k, m):
    return np.where(x > a, k * (x - a) ** m, np.where(x < -a, k * (-x - a) ** m, 0.0))


def penalized_1(x):
    n = x.size
    y = 1.0 + (x + 1.0) / 4.0
    body = (
        10.0 * np.sin(np.pi * y[0]) ** 2
        + np.sum((y[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[1:]) ** 2))
        + (y[-1] - 1.0) ** 2
    )
    return float(np.pi / n * body + np.sum(_u(x, 10.0, 100.0, 4)))


def penalized_2(x):
    body = (
        np.sin(3.0 * np.pi * x[0]) ** 2
        + np.sum((x[:-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x[1:]) ** 2))
        + (x[-1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[-1]) ** 2)
    )
    return float(0.1 * body + np.sum(_u(x, 5.0, 100.0, 4)))


_FOXHOLE_GRID = np.array([-32.0, -16.0, 0.0, 16.0, 32.0])
_FOXHOLES = np.vstack([np.tile(_FOXHOLE_GRID, 5), np.repeat(_FOXHOLE_GRID, 5)])


def shekel_foxholes(x):
    j = np.arange(1, 26)
    inner = j + np.sum((x[:, None] - _FOXHOLES) ** 6, axis=0)
    return float(1.0 / (1.0 / 500.0 + np.sum(1.0 / inner)))


_KOWALIK_A = np.array([0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246])
_KOWALIK_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])


def kowalik(x):
    b = _KOWALIK_B
    model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3])
    return float(np.sum((_KOWALIK_A - model) ** 2))


def six_hump_camel(x):
    x1, x2 = x
    return float(4 * x1**2 - 2.1 * x1**4 + x1**6 / 3 + x1 * x2 - 4 * x2**2 + 4 * x2**4)


def branin(x):
    x1, x2 = x
    return float(
        (x2 - 5.1 / (4 * np.pi**2) * x1**2 + 5 / np.pi * x1 - 6) ** 2
        + 10 * (1 - 1 / (8 * np.pi)) * np.cos(x1)
        + 10
    )


def goldstein_price(x):
    x1, x2 = x
    a = 1 + (x1 + x2 + 1) ** 2 * (19 - 14 * x1 + 3 * x1**2 - 14 * x2 + 6 * x1 * x2 + 3 * x2**2)
    b = 30 + (2 * x1 - 3 * x2) ** 2 * (18 - 32 * x1 + 12 * x1**2 + 48 * x2 - 36 * x1 * x2 + 27 * x2**2)
    return float(a * b)


_H3_A = np.array([[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]])
_H3_C = np.array([1.0, 1.2, 3.0, 3.2])
_H3_P = np.array(
    [
        [0.3689, 0.1170, 0.2673],
        [0.4699, 0.4387, 0.7470],
        [0.1091, 0.8732, 0.5547],
        [0.03815, 0.5743, 0.8828],
    ]
)


def hartman_3(x):
    return float(-np.sum(_H3_C * np.exp(-np.sum(_H3_A * (x - _H3_P) ** 2, axis=1))))


# Schwefel 2.26 per-coordinate minimizer, refined with a bounded scalar search
_SCHWEFEL_X = 420.9687436961694
_SCHWEFEL_F = schwefel_2_26(np.array([_SCHWEFEL_X]))


@dataclass(frozen=True)
class BenchmarkFunction:
    """
    Registered test function.

    ``optimum`` and ``optimum_at`` are per-dimension callables for scalable
    members; ``optimum_at(d)`` returns the documented minimizer.
    """

    id: str
    name: str
    func: Callable[[np.ndarray], float]
    bounds: tuple
    dimension: int
    scalable: bool
    optimum: Callable[[int], float]
    optimum_at: Callable[[int], np.ndarray]
    description: str
    noisy: bool = False
    min_dimension: int = 1

    def bounds_for(self, dim: Optional[int] = None) -> tuple:
        d = self.check_dimension(dim)
        if self.scalable:
            return tuple(self.bounds[0] for _ in range(d))
        return self.bounds

    def check_dimension(self, dim: Optional[int]) -> int:
        if dim is None:
            return self.dimension
        if self.scalable:
            if dim < self.min_dimension:
                raise InvalidInputError(f"{self.id} needs dimension >= {self.min_dimension}")
            return int(dim)
        if dim != self.dimension:
            raise InvalidInputError(f"{self.id} has fixed dimension {self.dimension}, got {dim}")
        return self.dimension

    def known_optimum(self, dim: Optional[int] = None) -> float:
        return self.optimum(self.check_dimension(dim))

    def __call__(self, x, rng: Optional[np.random.Generator] = None) -> float:
        x = np.asarray(x, dtype=float)
        value = self.func(x)
        if self.noisy:
            if rng is None:
                raise InvalidInputError(f"{self.id} draws noise and needs an rng")
            value += float(rng.random())
        return value

    def problem(self, dim: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> ObjectiveProblem:
        """Wrap as a minimization problem; ``rng`` feeds the noisy member."""
        bounds = self.bounds_for(dim)
        if self.noisy and rng is None:
            raise InvalidInputError(f"{self.id} draws noise and needs an rng")
        func = self.func
        if self.noisy:
            def objective(genome):
                return func(np.asarray(genome, dtype=float)) + float(rng.random())
        else:
            def objective(genome):
                return func(np.asarray(genome, dtype=float))
        return ObjectiveProblem(objective, bounds, Sense.MINIMIZE, Encoding.REAL, self.id)


def _zero(d):
    return 0.0


def _at(value):
    return lambda d: np.full(d, float(value))


def _fixed(point):
    point = np.array(point, dtype=float)
    return lambda d: point.copy()


def _const(value):
    return lambda d: value


_ENTRIES = [
    ("TF1", "sphere", sphere, (-100.0, 100.0), _zero, _at(0.0), "unimodal, separable"),
    ("TF2", "schwefel_2_22", schwefel_2_22, (-10.0, 10.0), _zero, _at(0.0), "unimodal"),
    ("TF3", "schwefel_1_2", schwefel_1_2, (-100.0, 100.0), _zero, _at(0.0), "unimodal, non-separable"),
    ("TF4", "schwefel_2_21", schwefel_2_21, (-100.0, 100.0), _zero, _at(0.0), "unimodal"),
    ("TF5", "rosenbrock", rosenbrock, (-30.0, 30.0), _zero, _at(1.0), "narrow curved valley"),
    ("TF6", "step", step, (-100.0, 100.0), _zero, _at(0.0), "discontinuous plateaus"),
    ("TF7", "quartic_noise", quartic, (-1.28, 1.28), _zero, _at(0.0), "quartic plus uniform noise"),
    ("TF8", "schwefel_2_26", schwefel_2_26, (-500.0, 500.0), lambda d: d * _SCHWEFEL_F, _at(_SCHWEFEL_X),
     "multimodal, deceptive"),
    ("TF9", "rastrigin", rastrigin, (-5.12, 5.12), _zero, _at(0.0), "multimodal, separable"),
    ("TF10", "ackley", ackley, (-32.0, 32.0), _zero, _at(0.0), "multimodal"),
    ("TF11", "griewank", griewank, (-600.0, 600.0), _zero, _at(0.0), "multimodal, non-separable"),
    ("TF12", "penalized_1", penalized_1, (-50.0, 50.0), _zero, _at(-1.0), "multimodal with penalty"),
    ("TF13", "penalized_2", penalized_2, (-50.0, 50.0), _zero, _at(1.0), "multimodal with penalty"),
]

# fixed-dimension minimizers refined with scipy.optimize from the literature values
_FIXED = [
    ("TF14", "shekel_foxholes", shekel_foxholes, ((-65.536, 65.536),) * 2,
     [-31.97833349568719, -31.97833349568719], "Shekel's foxholes"),
    ("TF15", "kowalik", kowalik, ((-5.0, 5.0),) * 4,
     [0.19283345282614842, 0.1908362466712692, 0.12311729782188144, 0.1357659942017657], "Kowalik"),
    ("TF16", "six_hump_camel", six_hump_camel, ((-5.0, 5.0),) * 2,
     [0.08984201368301331, -0.7126564032704135], "six-hump camel back"),
    ("TF17", "branin", branin, ((-5.0, 10.0), (0.0, 15.0)),
     [-np.pi, 12.275], "Branin"),
    ("TF18", "goldstein_price", goldstein_price, ((-2.0, 2.0),) * 2,
     [0.0, -1.0], "Goldstein-Price"),
    ("TF19", "hartman_3", hartman_3, ((0.0, 1.0),) * 3,
     [0.11461433238343445, 0.5556488504053422, 0.8525469521791692], "Hartman 3-D"),
]


def _build():
    reg = {}
    for tf, name, f, b, opt, at, desc in _ENTRIES:
        reg[tf] = BenchmarkFunction(
            tf, name, f, (b,), DEFAULT_DIMENSION, True, opt, at, desc,
            noisy=(tf == "TF7"), min_dimension=2 if f is rosenbrock else 1,
        )
    for tf, name, f, b, point, desc in _FIXED:
        value = f(np.array(point, dtype=float))
        reg[tf] = BenchmarkFunction(tf, name, f, b, len(b), False, _const(value), _fixed(point), desc)
    return reg


REGISTRY = _build()


def ids() -> list[str]:
    return list(REGISTRY)


def lookup(key: str) -> BenchmarkFunction:
    """
    Registered function by id (``"TF1"``) or by name (``"sphere"``).

    Raises
    ------
    InvalidInputError
        For unknown keys.
    """
    k = key.strip().upper()
    if k in REGISTRY:
        return REGISTRY[k]
    for bf in REGISTRY.values():
        if bf.name == key.strip().lower():
            return bf
    raise InvalidInputError(f"unknown benchmark function {key!r}")


def evaluate_tf(key: str, point: Sequence[float], rng: Optional[np.random.Generator] = None) -> float:
    """
    Evaluate a benchmark at ``point`` after checking dimension and bounds.
    """
    bf = lookup(key)
    x = np.asarray(point, dtype=float)
    if x.ndim != 1:
        raise InvalidInputError("point must be a 1-D vector")
    bounds = bf.bounds_for(x.size)
    for i, (v, (lo, hi)) in enumerate(zip(x, bounds)):
        if not lo <= v <= hi:
            raise InvalidInputError(f"{bf.id}: component {i} = {v} outside [{lo}, {hi}]")
    return bf(x, rng)
