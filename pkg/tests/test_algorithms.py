import math

import numpy as np
import pytest

from algorithms.ea import EA, EAFEA, FEA
from algorithms.gga import GFGA, GGA, GOLDEN_RATIO
from algorithms.runner import ALGORITHMS, run, trace
from algorithms.saga import FFA, PURE, SAFGA, SAFGAP, SAGA, offspring_count
from core.process import Evaluator
from core.rng import make_rng
from problems.registry import Jump, OneMax, Plateau, Problem, Trap, TwoMax


class Flat(Problem):
    """Every string has the same objective value."""

    name = "flat"

    def __init__(self, scale: int, value: int = 1):
        super().__init__(scale, max(value, 1))
        self.value = value

    def evaluate(self, x: np.ndarray) -> int:
        return self.value


class Binary(Problem):
    """The string read as a binary number; distinct strings never tie."""

    name = "binary"

    def __init__(self, scale: int):
        super().__init__(scale, 2**scale - 1)
        self._weights = 2 ** np.arange(scale)

    def evaluate(self, x: np.ndarray) -> int:
        return int(self._weights[x].sum())


def build(cls, problem, seed=1, budget=10**6, stop_at_optimum=True, **options):
    evaluator = Evaluator(problem, budget, stop_at_optimum=stop_at_optimum)
    algorithm = cls(problem, make_rng(seed), evaluator, **options)
    algorithm.initialize()
    return algorithm


def test_offspring_count_rounds_half_up_and_clamps() -> None:
    assert offspring_count(1.0, 10) == 1
    assert offspring_count(1.49, 10) == 1
    assert offspring_count(1.5, 10) == 2
    assert offspring_count(9.6, 10) == 10
    assert offspring_count(10.0, 10) == 10


def test_ea_is_elitist() -> None:
    ea = build(EA, Trap(32), seed=4)
    previous = ea.f_c
    for _ in range(500):
        assert ea.step() == 1
        assert ea.f_c <= previous
        previous = ea.f_c


def test_gga_keeps_parents_ordered_and_elitist() -> None:
    gga = build(GGA, Trap(32), seed=4)
    assert gga.p == pytest.approx(GOLDEN_RATIO / 32)
    assert gga.f_c <= gga.f_d
    best = gga.f_c
    for _ in range(500):
        gga.step()
        assert gga.f_c <= gga.f_d
        assert gga.f_c <= best
        best = gga.f_c


def test_gga_accepts_mutation_rate_override() -> None:
    gga = build(GGA, OneMax(100), p_factor=0.773581)
    assert gga.p == pytest.approx(0.00773581)
    with pytest.raises(ValueError):
        build(GGA, OneMax(4), p_factor=5.0)


def test_fea_first_step_always_accepts() -> None:
    for seed in range(20):
        fea = build(FEA, OneMax(32), seed=seed)
        fea.step()
        assert fea.x_c is fea.x_n


def test_fea_counts_two_values_per_step() -> None:
    fea = build(FEA, Flat(16))
    for _ in range(100):
        fea.step()
    assert fea.table.fitness(1) == 200
    assert fea.table.total_increments == 200
    assert fea.x_c is fea.x_n


def test_gfga_counts_three_values_per_step() -> None:
    gfga = build(GFGA, Flat(16))
    for _ in range(50):
        gfga.step()
    assert gfga.table.fitness(1) == 150


def test_gfga_keeps_parents_ordered_by_frequency() -> None:
    for seed in range(20):
        gfga = build(GFGA, TwoMax(16), seed=seed, stop_at_optimum=False)
        for _ in range(300):
            gfga.step()
            assert gfga.table.fitness(gfga.f_c) <= gfga.table.fitness(gfga.f_d)


def test_gfga_rejects_unknown_gate() -> None:
    with pytest.raises(ValueError):
        build(GFGA, OneMax(8), crossover_gate="sometimes")


def test_saga_first_iteration_costs_one_evaluation() -> None:
    saga = build(SAGA, OneMax(64), seed=2)
    assert saga.lam == 1.0
    # One mutant; the single crossover child with c = 1 clones it
    assert saga.step() == 1


def test_saga_lambda_stays_in_bounds() -> None:
    saga = build(SAGA, OneMax(64), seed=3)
    for _ in range(300):
        saga.step()
        assert 1.0 <= saga.lam <= 64.0


def test_safga_lambda_grows_to_scale_on_flat_problem() -> None:
    safga = build(SAFGA, Flat(16))
    steps = math.ceil(math.log(16) / (0.25 * math.log(1.5)))
    for _ in range(steps):
        safga.step()
    assert safga.lam == 16.0


def test_safga_decreases_lambda_after_frequency_success() -> None:
    safga = build(SAFGA, Binary(8), seed=5, stop_at_optimum=False)
    safga.lam = 4.0
    for _ in range(10):
        safga.table.increment(safga.f_c)
    safga.step()
    assert safga.lam == pytest.approx(4.0 / 1.5)
    assert safga.table.fitness(safga.f_c) < 10


def test_safgap_switches_to_ffa_one_iteration_after_lambda_saturates() -> None:
    safgap = build(SAFGAP, Flat(16))
    # round(1.5 ** (k / 4)) first reaches 16 at k = 28
    for _ in range(27):
        safgap.step()
    assert offspring_count(safgap.lam, 16) == 15
    assert not safgap.reached_s
    safgap.step()
    assert offspring_count(safgap.lam, 16) == 16
    assert safgap.mode == PURE
    assert safgap.reached_s
    assert safgap.table.total_increments == 0
    # Single mutant at round(lambda) = s
    assert safgap.step() <= 17
    assert safgap.mode == FFA
    safgap.step()
    assert safgap.table.total_increments > 0
    assert safgap.mode == FFA


def test_safgap_returns_to_pure_when_best_improves() -> None:
    safgap = build(SAFGAP, OneMax(32), seed=6, stop_at_optimum=False)
    safgap.mode = FFA
    for _ in range(500):
        before = safgap.evaluator.best_f
        safgap.step()
        if safgap.evaluator.best_f < before:
            assert safgap.mode == PURE
            return
        assert safgap.mode == FFA
    pytest.fail("best-so-far never improved")


def test_safgap_rechecks_saturation_when_returning_to_pure() -> None:
    safgap = build(SAFGAP, OneMax(16), seed=7, stop_at_optimum=False, F=1.01)
    safgap.mode = FFA
    safgap.lam = 16.0
    # Any evaluation now improves the best-so-far value
    safgap.evaluator.best_f = safgap.problem.upper_bound + 1
    safgap.step()
    assert safgap.mode == PURE
    assert offspring_count(safgap.lam, 16) == 16
    assert safgap.reached_s
    safgap.step()
    assert safgap.mode == FFA
    assert safgap.counters() == {"switches": 2}


def test_eafea_shares_the_budget_evenly() -> None:
    eafea = build(EAFEA, OneMax(64), seed=1)
    assert eafea.evaluator.fes == 2
    for _ in range(30):
        assert eafea.step() == 2
    assert eafea.evaluator.fes == 62


def test_eafea_overwrites_on_equal_values() -> None:
    for rule in ("leq", "equal"):
        eafea = build(EAFEA, Flat(16), overwrite=rule)
        eafea.step()
        assert eafea.ea.x_c is eafea.fea.x_n


def test_eafea_keeps_a_better_ea_solution() -> None:
    eafea = build(EAFEA, OneMax(16), seed=2)
    eafea.ea.x_c = np.ones(16, dtype=bool)
    eafea.ea.f_c = 0
    eafea.step()
    assert eafea.ea.f_c == 0
    assert eafea.ea.x_c.all()


def test_eafea_rejects_unknown_rule() -> None:
    with pytest.raises(ValueError):
        build(EAFEA, OneMax(8), overwrite="always")


@pytest.mark.parametrize("algorithm_id", ["fea", "gfga", "safga"])
def test_ffa_traces_are_invariant_under_injective_transforms(algorithm_id) -> None:
    for seed in range(5):
        base = trace(algorithm_id, OneMax(32), seed, 1500)
        assert len(base) == 1500
        assert trace(algorithm_id, Trap(32), seed, 1500) == base
        assert trace(algorithm_id, Jump(32, 6), seed, 1500) == base


def test_pure_traces_depend_on_the_objective() -> None:
    assert trace("ea", OneMax(32), 0, 1500) != trace("ea", Trap(32), 0, 1500)


def test_safgap_matches_saga_on_onemax() -> None:
    for seed in range(20):
        saga = trace("saga", OneMax(100), seed, 10**6, stop_at_optimum=True)
        safgap = trace("safgap", OneMax(100), seed, 10**6, stop_at_optimum=True)
        assert safgap == saga


def test_ea_onemax_runtime_is_s_log_s() -> None:
    s = 100
    runtimes = [run("ea", OneMax(s), seed, 10**6).used_fes for seed in range(100)]
    mean = float(np.mean(runtimes))
    assert 0.8 * s * math.log(s) <= mean <= math.e * s * math.log(s)


def test_eafea_needs_about_twice_the_ea_time() -> None:
    ea = [run("ea", OneMax(100), seed, 10**6).used_fes for seed in range(100)]
    eafea = [run("eafea", OneMax(100), seed, 10**6).used_fes for seed in range(100)]
    assert 1.6 <= np.mean(eafea) / np.mean(ea) <= 2.6


def test_pure_algorithms_fail_on_trap() -> None:
    for algorithm_id in ("ea", "gga"):
        for seed in range(3):
            assert not run(algorithm_id, Trap(32), seed, 10**4).success


@pytest.mark.parametrize("algorithm_id", sorted(ALGORITHMS))
def test_every_algorithm_solves_small_onemax(algorithm_id) -> None:
    for seed in range(3):
        record = run(algorithm_id, OneMax(16), seed, 10**5)
        assert record.success
        assert record.best_f == 0


@pytest.mark.parametrize("algorithm_id", ["fea", "gfga", "eafea"])
def test_ffa_algorithms_solve_twomax(algorithm_id) -> None:
    records = [run(algorithm_id, TwoMax(16), seed, 10**5) for seed in range(20)]
    assert all(r.success for r in records)


@pytest.mark.slow
@pytest.mark.parametrize("algorithm_id", ["ea", "gga"])
def test_pure_algorithms_fail_on_trap_with_large_budget(algorithm_id) -> None:
    assert not any(run(algorithm_id, Trap(32), seed, 10**6).success for seed in range(10))


@pytest.mark.parametrize("algorithm_id", ["safga", "safgap"])
def test_frequency_variants_cross_the_plateau(algorithm_id) -> None:
    s = 16
    width = math.isqrt(s) + 1
    records = [run(algorithm_id, Plateau(s, width), seed, 10**6) for seed in range(20)]
    assert all(r.success for r in records)
    assert np.mean([r.used_fes for r in records]) < s**4


@pytest.mark.slow
@pytest.mark.parametrize("algorithm_id", ["safga", "safgap"])
@pytest.mark.parametrize("s", [16, 32, 64])
def test_frequency_variants_cross_the_plateau_at_scale(algorithm_id, s) -> None:
    width = math.isqrt(s) + 1
    records = [run(algorithm_id, Plateau(s, width), seed, 10**7) for seed in range(71)]
    assert all(r.success for r in records)
    assert np.mean([r.used_fes for r in records]) < s**4
