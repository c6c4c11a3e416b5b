"""
Acceptance criteria, one test each. Every test prints a single
``[PASS]``/``[FAIL]`` line before asserting.
"""

import io
import itertools
import math
import time

import pytest

from lpbsa.annealing import acceptance_probability
from lpbsa.benchmarks import REGISTRY
from lpbsa.casestudy import case_study_problem, replay
from lpbsa.cli import main
from lpbsa.core import Individual, RunConfig, Sense, evaluate, make_rng
from lpbsa.encoding import ZERO_TO_ONE, crossover_binary, decode, encode, mutate_binary
from lpbsa.engine import lpb_run, lpbsa_run
from lpbsa.grouping import IDEAL, GOOD, BAD, partition, sample_subpopulation, select_parents
from lpbsa.harness import ExperimentConfig, run_experiment

from .conftest import ACCEPTANCE_LINES, TABLE_POPULATION
from . import worked_example as wx


def report(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def test_criterion_1_case_study_replay():
    start = time.perf_counter()
    code = main(["trace"], out=(buf := io.StringIO()), err=io.StringIO())
    elapsed = time.perf_counter() - start
    last = buf.getvalue().rstrip("\n").split("\n")[-1]
    _, _, averages = replay()
    ok = code == 0 and last == "28889053 52649382 55693299" and averages == wx.AVERAGES and elapsed < 1.0
    assert report(1, ok, f"averages {last!r}, {elapsed:.3f} s")


def test_criterion_2_fixture_fidelity(table_population):
    problem = case_study_problem()
    checks = []
    checks += [evaluate(problem, (x1, x2)) == f for _, x1, x2, f in TABLE_POPULATION]

    _, history, _ = replay()
    mismatches = []
    for it, (rec, table, muts) in enumerate(
        [(history[0], wx.CROSSOVER_1, wx.MUTATED_1), (history[1], wx.CROSSOVER_2, wx.MUTATED_2)], start=1
    ):
        expected = [c for _, _, c1, c2 in table for c in (c1, c2)]
        checks.append([c.genome for c in rec.children] == expected)
        checks.append([c.genome for c in rec.mutated] == muts)
        # the operator itself, cell by cell, outside the script overrides
        for k, (p, q, c1, c2) in enumerate(table):
            for j in range(2):
                a, b = crossover_binary(encode(p[j]), encode(q[j]))
                for cid, got, want in ((f"C{2 * k + 1}", decode(a), c1[j]), (f"C{2 * k + 2}", decode(b), c2[j])):
                    if (it, cid, j + 1) in wx.CROSSOVER_ERRATA:
                        checks.append(got != want)
                        mismatches.append(f"it{it} {cid} X{j + 1}")
                    else:
                        checks.append(got == want)
        for c, m in zip(expected, muts):
            for x, y in zip(c, m):
                bx, by = encode(x), encode(y)
                flips = [i for i in range(len(bx)) if bx[i] != by[i]]
                checks.append(len(bx) == len(by) and len(flips) == 1 and bx[flips[0]] == "0")

    for it, ids, printed, selected in [
        (1, wx.SUBPOP_1, wx.LABELS_1, wx.SELECTED_1),
        (2, wx.SUBPOP_2, wx.LABELS_2_PRINTED, wx.SELECTED_2),
    ]:
        split = sample_subpopulation(table_population, 8, Sense.MAXIMIZE, ids=ids)
        labels = partition(table_population, split, Sense.MAXIMIZE)
        for key, label in printed.items():
            checks.append((labels[key] != label) if (it, key) in wx.LABEL_ERRATA else (labels[key] == label))
        chosen = select_parents(labels, table_population, 4, Sense.MAXIMIZE)
        checks.append([(c.id, labels[c.id]) for c in chosen] == selected)

    errata = ["partition it2 B2"] + [f"crossover {m}" for m in mismatches]
    errata += [f"binary cell {t} {r} X{g}" for t, r, g, _, _ in wx.BINARY_CELL_ERRATA]
    for _, _, _, value, printed_bits in wx.BINARY_CELL_ERRATA:
        checks.append(decode(printed_bits) != value)
    ok = all(checks)
    assert report(2, ok, f"{sum(checks)}/{len(checks)} checks; errata excluded: {', '.join(errata)}")


def test_criterion_3_acceptance_verdicts():
    _, history, _ = replay()
    got = [{c.id for c in rec.rejected} for rec in history]
    ok = got == [wx.REJECTED_1, wx.REJECTED_2]
    assert report(3, ok, f"rejected {[sorted(g) for g in got]}")


def test_criterion_4_mac_properties():
    rng = make_rng(20240401)
    tol = 1e-12
    failures = 0
    n = 10_000
    for _ in range(n):
        sense = Sense.MINIMIZE if rng.random() < 0.5 else Sense.MAXIMIZE
        t = float(10 ** rng.uniform(-2, 3))
        cur = float(rng.uniform(-1e3, 1e3))
        # keep dE / T within (0, 50] so probabilities stay well above underflow
        d1 = float(rng.uniform(1e-6, 25.0) * t)
        d2 = d1 * (1.0 + float(rng.uniform(0.01, 1.0)))
        sign = 1.0 if sense is Sense.MINIMIZE else -1.0
        mirrored = Sense.MAXIMIZE if sense is Sense.MINIMIZE else Sense.MINIMIZE
        worse1, worse2 = cur + sign * d1, cur + sign * d2
        better_ = cur - sign * float(rng.uniform(0, 1e3))
        p1 = acceptance_probability(worse1, cur, t, sense)
        p2 = acceptance_probability(worse2, cur, t, sense)
        oracle = math.exp(-(abs(worse1 - cur)) / t)
        conds = [
            acceptance_probability(better_, cur, t, sense) == 1.0,
            acceptance_probability(cur, cur, t, sense) == 1.0,
            p1 < 1.0,
            abs(p1 - oracle) <= tol,
            p2 < p1,
            acceptance_probability(worse1, cur, t * 1.5, sense) > p1,
            abs(acceptance_probability(-worse1, -cur, t, mirrored) - p1) <= tol,
        ]
        failures += not all(conds)
    assert report(4, failures == 0, f"{n - failures}/{n} randomized cases, tolerance {tol:g}")


def _brute_force_parents(labels, population, n, sense):
    rank = {IDEAL: 0, GOOD: 1, BAD: 2}

    def key(ind):
        f = -ind.fitness if sense is Sense.MAXIMIZE else ind.fitness
        return (rank[labels[ind.id]], f, int(ind.id[1:]))

    best = None
    for combo in itertools.combinations(population, n):
        k = sorted(key(i) for i in combo)
        if best is None or k < best:
            best = k
    order = {key(i): i for i in population}
    return [order[k] for k in best]


def test_criterion_5_operator_properties():
    rng = make_rng(5)
    values = rng.integers(0, 2**62, size=100_000)
    round_trip = all(decode(encode(int(v))) == int(v) for v in values)

    conserved = True
    increases = True
    for _ in range(10_000):
        a, b = (encode(int(v)) for v in rng.integers(0, 2**31, size=2))
        c1, c2 = crossover_binary(a, b)
        conserved &= len(c1) + len(c2) == len(a) + len(b) and (c1 + c2).count("1") == (a + b).count("1")
        if "0" in a:
            increases &= decode(mutate_binary(a, ZERO_TO_ONE, rng)[0]) > decode(a)

    agree = 0
    instances = 1000
    for k in range(instances):
        size = int(rng.integers(2, 9))
        sense = Sense.MAXIMIZE if k % 2 else Sense.MINIMIZE
        pop = [Individual((0,), int(f), f"B{i}") for i, f in enumerate(rng.integers(-5, 6, size=size), start=1)]
        sub = int(rng.choice(range(2, size + 1, 2)))
        split = sample_subpopulation(pop, sub, sense, rng)
        labels = partition(pop, split, sense)
        n = int(rng.integers(1, size + 1))
        agree += [i.id for i in select_parents(labels, pop, n, sense)] == [
            i.id for i in _brute_force_parents(labels, pop, n, sense)
        ]
    ok = round_trip and conserved and increases and agree == instances
    assert report(
        5, ok,
        f"round trip 1e5 {round_trip}, bit conservation {conserved}, "
        f"ZeroToOne increase {increases}, select_parents {agree}/{instances}",
    )


@pytest.fixture(scope="module")
def tf1_pair():
    config = ExperimentConfig(run=RunConfig(), dimension=2, evaluations=10_000, base_seed=1)
    start = time.perf_counter()
    lpbsa = run_experiment("lpbsa", "TF1", config, 30)
    lpb = run_experiment("lpb", "TF1", config, 30)
    return lpbsa, lpb, time.perf_counter() - start


def test_criterion_6a_lpbsa_not_worse_than_lpb(tf1_pair):
    lpbsa, lpb, elapsed = tf1_pair
    ok = lpbsa.average <= lpb.average and elapsed < 120
    assert report(
        "6a", ok,
        f"TF1 d=2, 30 paired seeds from 1, 10^4 evaluations: LPBSA {lpbsa.average:.6e} vs LPB {lpb.average:.6e}, "
        f"{elapsed:.1f} s",
    )


def test_criterion_6b_lpbsa_reaches_sphere_minimum(tf1_pair):
    lpbsa, _, _ = tf1_pair
    hits = sum(v < 1e-2 for v in lpbsa.per_run_finals)
    assert report("6b", hits >= 28, f"{hits}/30 runs below 1e-2")


# literature optima and the constants printed in the reference table
FIXED_OPTIMA = {
    "TF14": (0.998003837794449, "0.998"),
    "TF16": (-1.0316284534898774, "-1.0316"),
    "TF17": (5.0 / (4.0 * math.pi), "0.39789"),
    "TF18": (3.0, "3.0"),
    "TF19": (-3.86278214782076, "-3.8628"),
}


def test_criterion_6c_fixed_dimension_optima():
    details, ok = [], True
    for key, (literature, printed) in FIXED_OPTIMA.items():
        bf = REGISTRY[key]
        value = bf(bf.optimum_at(bf.dimension))
        decimals = len(printed.split(".")[1])
        good = abs(value - literature) <= 1e-6 and round(value, decimals) == float(printed)
        ok &= good
        details.append(f"{key}={value:.10g}")
    assert report("6c", ok, ", ".join(details) + " (within 1e-6 of literature, rounds to printed)")


def _cli_bytes(argv, tmp_path, tag):
    out_dir = tmp_path / tag
    buf = io.StringIO()
    code = main(argv + (["--out", str(out_dir)] if argv[0] == "bench" else []), out=buf, err=io.StringIO())
    files = {p.name: p.read_bytes() for p in sorted(out_dir.glob("*"))} if out_dir.exists() else {}
    text = buf.getvalue().replace(str(out_dir), "<out>")
    return code, text, files


def test_criterion_7_determinism(tmp_path):
    commands = [
        ["run", "--alg", "lpbsa", "--tf", "TF10", "--dim", "3", "--iters", "30", "--seed", "7"],
        ["run", "--alg", "sa", "--tf", "TF1", "--dim", "2", "--seed", "7"],
        ["bench", "--alg", "lpbsa,lpb,sa", "--tf", "TF7,TF17", "--runs", "3", "--iters", "10", "--seed", "11"],
        ["trace"],
    ]
    same = []
    for k, argv in enumerate(commands):
        a = _cli_bytes(argv, tmp_path, f"a{k}")
        b = _cli_bytes(argv, tmp_path, f"b{k}")
        same.append(a == b and a[0] == 0)
    assert report(7, all(same), f"{sum(same)}/{len(same)} invocations byte-identical")


def _trajectory(history):
    return [
        (r.split.members, r.parents, r.pairs, r.children, r.mutated, r.accepted, r.survivors, r.best, r.evaluations)
        for r in history
    ]


def test_criterion_8_fixed_zero_threshold_equals_lpb():
    equal = 0
    for seed in range(10):
        problem = REGISTRY["TF10"].problem(4)
        cfg = RunConfig(max_iterations=25, fixed_threshold=0.0, seed=seed)
        a = lpbsa_run(problem, cfg, make_rng(seed))
        b = lpb_run(problem, cfg, make_rng(seed))
        equal += a[0] == b[0] and _trajectory(a[1]) == _trajectory(b[1])
    assert report(8, equal == 10, f"{equal}/10 seeds give identical trajectories")
