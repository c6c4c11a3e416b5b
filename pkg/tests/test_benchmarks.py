import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpbsa.benchmarks import REGISTRY, evaluate_tf, ids, lookup
from lpbsa.core import InvalidInputError, Sense, make_rng

SCALABLE = [k for k, bf in REGISTRY.items() if bf.scalable]
FIXED = [k for k, bf in REGISTRY.items() if not bf.scalable]

# optima quoted in the benchmark literature, independent of the registry
LITERATURE_OPTIMA = {
    "TF14": 0.998003837794449,
    "TF15": 3.0748598780e-4,
    "TF16": -1.0316284534898774,
    "TF17": 5.0 / (4.0 * np.pi),
    "TF18": 3.0,
    "TF19": -3.86278214782076,
}


def test_registry_has_nineteen_members():
    assert ids() == [f"TF{i}" for i in range(1, 20)]
    assert len(SCALABLE) == 13 and len(FIXED) == 6


@pytest.mark.parametrize("key", ["TF1", "tf1", "sphere", " Sphere "])
def test_lookup_by_id_or_name(key):
    assert lookup(key).id == "TF1"


def test_rastrigin_resolves_by_name():
    assert lookup("rastrigin").id == "TF9"


def test_unknown_function():
    with pytest.raises(InvalidInputError, match="TF99"):
        lookup("TF99")


@pytest.mark.parametrize("key", [k for k in SCALABLE if k != "TF7"])
@pytest.mark.parametrize("dim", [2, 5, 30])
def test_scalable_optimum_location(key, dim):
    bf = REGISTRY[key]
    assert bf(bf.optimum_at(dim)) == pytest.approx(bf.known_optimum(dim), abs=1e-9)


def test_schwefel_226_optimum_per_dimension():
    assert REGISTRY["TF8"].known_optimum(30) == pytest.approx(-12569.486618, abs=1e-5)


@pytest.mark.parametrize("key", FIXED)
def test_fixed_optimum_against_literature(key):
    bf = REGISTRY[key]
    assert abs(bf(bf.optimum_at(bf.dimension)) - LITERATURE_OPTIMA[key]) <= 1e-6


@pytest.mark.parametrize("key", FIXED)
def test_fixed_dimension_enforced(key):
    bf = REGISTRY[key]
    with pytest.raises(InvalidInputError):
        bf.check_dimension(bf.dimension + 1)


def test_rosenbrock_needs_two_dimensions():
    with pytest.raises(InvalidInputError):
        REGISTRY["TF5"].problem(1)


def test_noise_needs_rng():
    with pytest.raises(InvalidInputError):
        REGISTRY["TF7"](np.zeros(3))
    v = REGISTRY["TF7"](np.zeros(3), make_rng(0))
    assert 0.0 <= v < 1.0


@pytest.mark.parametrize(
    "key,point,value",
    [
        ("TF1", [1.0, 2.0], 5.0),
        ("TF2", [1.0, -2.0], 5.0),
        ("TF3", [1.0, 2.0], 10.0),
        ("TF4", [1.0, -3.0], 3.0),
        ("TF5", [0.0, 0.0], 1.0),
        ("TF6", [0.4, -1.6], 4.0),
        ("TF9", [1.0, 0.0], 1.0),
        ("TF18", [0.0, 0.0], 600.0),
    ],
)
def test_hand_computed_values(key, point, value):
    assert evaluate_tf(key, point) == pytest.approx(value, abs=1e-9)


def test_evaluate_tf_rejects_out_of_bounds():
    with pytest.raises(InvalidInputError):
        evaluate_tf("TF1", [101.0, 0.0])


def test_problem_is_minimized():
    problem = REGISTRY["TF10"].problem(4)
    assert problem.sense is Sense.MINIMIZE
    assert problem.dimension == 4


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([k for k in ids() if k != "TF7"]), st.integers(0, 2**31))
def test_no_point_beats_the_optimum(key, seed):
    bf = REGISTRY[key]
    dim = bf.dimension if not bf.scalable else 3
    rng = make_rng(seed)
    bounds = np.array(bf.bounds_for(dim))
    x = rng.uniform(bounds[:, 0], bounds[:, 1])
    assert bf(x) >= bf.known_optimum(dim) - 1e-9
