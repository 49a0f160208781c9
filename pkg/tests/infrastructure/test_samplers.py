import math
from itertools import product

import numpy as np
import pytest

from src.core.domain import AnnealSchedule, MultilinearPoly, QuboModel
from src.core.exceptions import EmptyModelError, SizeGuardError
from src.core.kernels import (
    compile_objective,
    evaluate,
    gram_summary,
    project,
    quadratize,
    qubo_value,
    to_ising,
    ising_value,
)
from src.infrastructure.samplers import (
    ExactSampler,
    SimulatedAnnealingSampler,
    default_betas,
    enumerate_qubo,
    simulated_anneal,
)


@pytest.fixture
def compiled_d5(make_dataset) -> QuboModel:
    ds = make_dataset(n=60, d=5, seed=17)
    return quadratize(compile_objective(ds, gram_summary(ds), 0.05))


def _separable(linear: tuple[float, ...], offset: float = 0.0) -> QuboModel:
    return QuboModel(
        num_vars=len(linear), num_original=len(linear), offset=offset, linear=linear
    )


class TestEnumerateQubo:
    def test_single_variable(self):
        sampleset = enumerate_qubo(_separable((-1.0,)))

        assert sampleset.best_read.assignment == (1,)
        assert sampleset.best_read.energy == -1.0
        assert sampleset.summary.num_states == 2
        assert sampleset.summary.maximum == 0.0

    def test_returns_every_ground_state_in_lexicographic_order(self):
        # x0 + x1 - 2·x0·x1 is 0 at 00 and 11, 1 elsewhere.
        q = QuboModel(
            num_vars=2, num_original=2, linear=(1.0, 1.0), quadratic={(0, 1): -2.0}
        )

        sampleset = enumerate_qubo(q)

        assert [read.assignment for read in sampleset.reads] == [(0, 0), (1, 1)]
        assert [read.read_index for read in sampleset.reads] == [0, 1]
        assert sampleset.summary.mean == pytest.approx(0.5)

    def test_ground_state_is_the_ising_minimum(self, make_dataset):
        ds = make_dataset(n=30, d=3, seed=23)
        q = quadratize(compile_objective(ds, gram_summary(ds), 0.05))
        ising = to_ising(q)

        spin_values = {
            spins: ising_value(ising, spins)
            for spins in product((-1, 1), repeat=ising.num_spins)
        }
        lowest = min(spin_values.values())
        tolerance = 1e-9 * max(1.0, abs(lowest))
        spin_argmins = {s for s, value in spin_values.items() if value <= lowest + tolerance}

        ground_states = enumerate_qubo(q).reads
        assert lowest == pytest.approx(ground_states[0].energy, abs=tolerance)
        assert spin_argmins == {
            tuple(2 * bit - 1 for bit in read.assignment) for read in ground_states
        }
    def test_projected_ground_state_is_polynomial_argmin(self, make_dataset):
        ds = make_dataset(n=60, d=5, seed=17)
        poly = compile_objective(ds, gram_summary(ds), 0.05)

        ground = enumerate_qubo(quadratize(poly)).best_read
        brute = min(product((0, 1), repeat=5), key=lambda z: evaluate(poly, z))

        assert project(quadratize(poly), ground.assignment) == brute

    def test_energies_are_honest(self, compiled_d5):
        for read in enumerate_qubo(compiled_d5).reads:
            expected = qubo_value(compiled_d5, read.assignment)
            assert read.energy == pytest.approx(expected, abs=1e-10)

    def test_size_guard(self):
        with pytest.raises(SizeGuardError):
            enumerate_qubo(_separable((1.0,) * 5), max_vars=4)

    def test_sampler_adapter_ignores_schedule(self):
        sampleset = ExactSampler().sample(_separable((2.0, -3.0)), AnnealSchedule(num_reads=7))

        assert sampleset.best_read.assignment == (0, 1)


class TestDefaultBetas:
    def test_single_linear_term(self):
        beta_initial, beta_final = default_betas(_separable((-1.0,)))

        assert beta_initial == pytest.approx(math.log(2.0))
        assert beta_final == pytest.approx(math.log(100.0))

    def test_scaling_coefficients_scales_betas_inversely(self, compiled_d5):
        scaled = QuboModel(
            num_vars=compiled_d5.num_vars,
            num_original=compiled_d5.num_original,
            linear=tuple(4.0 * c for c in compiled_d5.linear),
            quadratic={key: 4.0 * c for key, c in compiled_d5.quadratic.items()},
        )

        original = default_betas(compiled_d5)
        rescaled = default_betas(scaled)

        assert rescaled[0] == pytest.approx(original[0] / 4.0)
        assert rescaled[1] == pytest.approx(original[1] / 4.0)

    def test_compiled_instance_gets_finite_increasing_pair(self, compiled_d5):
        beta_initial, beta_final = default_betas(compiled_d5)

        assert 0.0 < beta_initial < beta_final < math.inf

    def test_all_zero_model_is_rejected(self):
        with pytest.raises(EmptyModelError):
            default_betas(_separable((0.0, 0.0), offset=3.0))


class TestSimulatedAnneal:
    def test_separable_model_reaches_sign_greedy_optimum_on_every_read(self):
        linear = (-1.0, 2.0, -0.5, 0.25, -3.0)
        schedule = AnnealSchedule(num_reads=20, sweeps_per_read=50, seed=3)

        sampleset = simulated_anneal(_separable(linear, offset=1.0), schedule)

        optimum = 1.0 + sum(min(0.0, c) for c in linear)
        for read in sampleset.reads:
            assert read.assignment == (1, 0, 1, 0, 1)
            assert read.energy == pytest.approx(optimum)

    def test_identical_for_any_thread_count_and_batch_size(self, compiled_d5):
        schedule = AnnealSchedule(num_reads=40, sweeps_per_read=100, seed=123)

        single = simulated_anneal(compiled_d5, schedule, threads=1)
        threaded = simulated_anneal(compiled_d5, schedule, threads=4, batch_size=8)

        assert single == threaded

    def test_reads_are_stable_across_read_counts(self, compiled_d5):
        few = simulated_anneal(compiled_d5, AnnealSchedule(num_reads=10, sweeps_per_read=80))
        many = simulated_anneal(compiled_d5, AnnealSchedule(num_reads=70, sweeps_per_read=80))

        assert many.reads[:10] == few.reads

    def test_different_seeds_give_different_reads(self):
        # Four independent ferromagnetic pairs: sixteen degenerate ground states.
        q = QuboModel(
            num_vars=8,
            num_original=8,
            linear=(1.0,) * 8,
            quadratic={(i, i + 1): -2.0 for i in range(0, 8, 2)},
        )
        a = simulated_anneal(q, AnnealSchedule(num_reads=10, sweeps_per_read=20, seed=1))
        b = simulated_anneal(q, AnnealSchedule(num_reads=10, sweeps_per_read=20, seed=2))

        assert [r.assignment for r in a.reads] != [r.assignment for r in b.reads]

    def test_never_beats_the_exact_ground_state(self, compiled_d5):
        ground = enumerate_qubo(compiled_d5).best_read.energy
        tolerance = 1e-9 * max(1.0, abs(ground))

        for seed in range(5):
            schedule = AnnealSchedule(num_reads=20, sweeps_per_read=200, seed=seed)
            best = simulated_anneal(compiled_d5, schedule).best_read.energy
            assert best >= ground - tolerance

    def test_finds_the_ground_state_with_the_default_schedule(self, compiled_d5):
        ground = enumerate_qubo(compiled_d5).best_read.energy
        tolerance = 1e-9 * max(1.0, abs(ground))

        hits = 0
        for seed in range(5):
            best = simulated_anneal(compiled_d5, AnnealSchedule(seed=seed)).best_read.energy
            hits += abs(best - ground) <= tolerance

        assert hits >= 4

    @pytest.mark.slow
    def test_default_schedule_reaches_ground_state_on_nearly_every_seed(self, compiled_d5):
        ground = enumerate_qubo(compiled_d5).best_read.energy
        tolerance = 1e-9 * max(1.0, abs(ground))

        hits = sum(
            abs(simulated_anneal(compiled_d5, AnnealSchedule(seed=seed)).best_read.energy - ground)
            <= tolerance
            for seed in range(100)
        )

        assert hits >= 95

    def test_energies_are_honest(self, compiled_d5):
        sampleset = simulated_anneal(compiled_d5, AnnealSchedule(num_reads=10, sweeps_per_read=30))

        for read in sampleset.reads:
            assert read.energy == qubo_value(compiled_d5, read.assignment)
        assert [read.read_index for read in sampleset.reads] == list(range(10))

    def test_explicit_betas_are_used(self, mocker):
        geomspace = mocker.spy(np, "geomspace")
        schedule = AnnealSchedule(
            num_reads=2, sweeps_per_read=5, beta_initial=0.1, beta_final=10.0
        )

        simulated_anneal(_separable((1.0, -1.0)), schedule)

        geomspace.assert_called_once_with(0.1, 10.0, 5)

    def test_sampler_adapter_passes_threads(self, mocker, compiled_d5):
        run = mocker.patch(
            "src.infrastructure.samplers.simulated_annealing.simulated_anneal"
        )
        schedule = AnnealSchedule(num_reads=3)

        SimulatedAnnealingSampler(threads=2, batch_size=16).sample(compiled_d5, schedule)

        run.assert_called_once_with(compiled_d5, schedule, threads=2, batch_size=16)


def test_enumeration_recovers_cubic_minimum():
    poly = MultilinearPoly(num_vars=3, terms={(0, 1, 2): -1.0, (0,): 0.5})

    ground = enumerate_qubo(quadratize(poly)).best_read

    assert ground.energy == pytest.approx(-0.5)
    assert ground.assignment[:3] == (1, 1, 1)
