"""
A tour of the benchmark registry
================================

Nineteen classical test functions, all minimized. The first thirteen are
scalable; the last six have a fixed dimension.
"""

# %%
import numpy as np

from lpbsa.core import make_rng

from lpbsa.benchmarks import REGISTRY, evaluate_tf

for bf in REGISTRY.values():
    d = bf.dimension if not bf.scalable else 5
    print(f"{bf.id:<5}{bf.name:<17}d={d:<3}optimum {bf.known_optimum(d):.10g}")

# %%
# Random points never beat the documented optimum.
rng = make_rng(0)
bf = REGISTRY["TF10"]
bounds = np.array(bf.bounds_for(5))
samples = rng.uniform(bounds[:, 0], bounds[:, 1], size=(1000, 5))
print("ackley, best of 1000 random points:", min(bf(x) for x in samples))

# %%
# Points are checked against the bounds before evaluation.
print(evaluate_tf("goldstein_price", [0.0, -1.0]))
try:
    evaluate_tf("TF18", [3.0, 0.0])
except ValueError as exc:
    print("rejected:", exc)
