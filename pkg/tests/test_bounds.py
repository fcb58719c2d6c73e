from itertools import combinations

import numpy as np
import pytest

from statedisc import Ensemble
from statedisc.bounds import (
    bound_report,
    classical_top_d,
    dimension_ceiling,
    lp_optimum,
    pure_bound,
    spectral_bound,
)
from statedisc.errors import PreconditionError, ValidationError
from statedisc.sampling import haar_unitary, random_ensemble

from conftest import THREE_MESSAGE_PRIORS


class TestClassicalTopD:
    def test_worked_example(self):
        value = classical_top_d(THREE_MESSAGE_PRIORS, 2)
        assert value == 0.5 + 1.0 / 3.0
        assert value == pytest.approx(5.0 / 6.0, abs=1e-15)

    def test_budget_covers_everything(self):
        assert classical_top_d([0.2, 0.5, 0.3], 7) == pytest.approx(1.0, abs=1e-12)

    def test_four_messages(self):
        assert classical_top_d([0.4, 0.3, 0.2, 0.1], 3) == pytest.approx(0.9, abs=1e-12)

    def test_rejects_bad_distribution(self):
        with pytest.raises(ValidationError):
            classical_top_d([0.6, 0.6], 1)
        with pytest.raises(ValidationError):
            classical_top_d([1.2, -0.2], 1)

    def test_rejects_zero_budget(self):
        with pytest.raises(PreconditionError):
            classical_top_d([1.0], 0)


class TestLpOptimum:
    def test_worked_example(self):
        value, selection = lp_optimum(THREE_MESSAGE_PRIORS, 2)
        assert value == pytest.approx(5.0 / 6.0, abs=1e-15)
        assert selection == (0, 1)

    def test_zero_budget(self):
        assert lp_optimum([0.3, 0.7], 0) == (0.0, ())

    def test_tie_break_lowest_index(self):
        value, selection = lp_optimum([0.3, 0.3, 0.3], 2)
        assert value == pytest.approx(0.6, abs=1e-12)
        assert selection == (0, 1)

    def test_rejects_negative_weight(self):
        with pytest.raises(ValidationError):
            lp_optimum([0.5, -0.1], 1)

    def test_matches_enumeration_oracle(self):
        # oracle: enumerate every subset of at most the budget size
        rng = np.random.default_rng(200)
        for _ in range(30):
            n = int(rng.integers(1, 9))
            weights = rng.uniform(0.0, 1.0, size=n)
            budget = int(rng.integers(0, n + 2))
            best = 0.0
            for size in range(0, min(budget, n) + 1):
                for subset in combinations(range(n), size):
                    best = max(best, float(weights[list(subset)].sum()))
            value, selection = lp_optimum(weights, budget)
            assert value == pytest.approx(best, abs=1e-12)
            assert len(selection) <= budget
            assert value == pytest.approx(float(weights[list(selection)].sum()), abs=1e-12)

    def test_monotone_in_budget(self):
        rng = np.random.default_rng(201)
        weights = rng.uniform(0.0, 1.0, size=6)
        values = [lp_optimum(weights, k)[0] for k in range(8)]
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))
        assert values[6] == pytest.approx(float(weights.sum()), abs=1e-12)


class TestDimensionCeiling:
    def test_worked_example_is_vacuous(self, worked_example):
        assert dimension_ceiling(worked_example.ensemble) == 1.0

    def test_maximally_mixed(self):
        for d in (2, 3, 4):
            e = Ensemble(d, [1.0], [np.eye(d) / d])
            assert dimension_ceiling(e) == pytest.approx(1.0, abs=1e-12)

    def test_equal_priors_pure(self):
        # four equiprobable pure states on one qubit: ceiling d/m = 1/2
        rng = np.random.default_rng(202)
        e = random_ensemble(2, 4, rng, pure=True)
        e = Ensemble(2, np.full(4, 0.25), e.states)
        assert dimension_ceiling(e) == pytest.approx(0.5, abs=1e-9)


class TestSpectralBound:
    def test_worked_example(self, worked_example):
        assert spectral_bound(worked_example.ensemble) == pytest.approx(5.0 / 6.0, abs=1e-15)

    def test_diagonal_pair(self):
        e = Ensemble(2, [0.5, 0.5], [np.diag([0.8, 0.2]), np.diag([0.6, 0.4])])
        assert spectral_bound(e) == pytest.approx(0.7, abs=1e-12)

    def test_single_message_saturates(self):
        rng = np.random.default_rng(203)
        e = random_ensemble(3, 1, rng)
        assert spectral_bound(e) == pytest.approx(1.0, abs=1e-9)

    def test_dominance_chain(self):
        for trial in range(25):
            rng = np.random.default_rng(204 + trial)
            e = random_ensemble(int(rng.integers(2, 5)), int(rng.integers(1, 5)), rng,
                                pure=trial % 3 == 0)
            sb = spectral_bound(e)
            assert sb <= min(1.0, dimension_ceiling(e)) + 1e-12

    def test_ambient_flag(self):
        # embedding a qubit pair into d=4 without compression uses the ambient budget
        rng = np.random.default_rng(205)
        basis = haar_unitary(4, rng)[:, :2]
        inner = random_ensemble(2, 2, rng)
        states = np.einsum("ka,iab,lb->ikl", basis, inner.states, basis.conj())
        e = Ensemble(4, inner.priors, states)
        compressed_value = spectral_bound(e)
        ambient_value = spectral_bound(e, compress_support=False)
        assert compressed_value == pytest.approx(spectral_bound(inner), abs=1e-10)
        assert ambient_value >= compressed_value - 1e-12


class TestPureBound:
    def test_worked_example(self, worked_example):
        assert pure_bound(worked_example.ensemble) == pytest.approx(5.0 / 6.0, abs=1e-15)

    def test_orthogonal_equal_priors(self):
        d = 3
        e = Ensemble(d, np.full(d, 1.0 / d),
                     [np.diag([1.0 if k == i else 0.0 for k in range(d)]) for i in range(d)])
        assert pure_bound(e) == pytest.approx(1.0, abs=1e-12)

    def test_trine(self, trine):
        assert pure_bound(trine) == 2.0 / 3.0

    def test_rejects_mixed_state_naming_message(self):
        e = Ensemble(2, [0.5, 0.5], [np.diag([1.0, 0.0]), np.diag([0.7, 0.3])])
        with pytest.raises(PreconditionError, match="message 1"):
            pure_bound(e)

    def test_reduces_to_spectral_bound(self):
        for trial in range(15):
            rng = np.random.default_rng(206 + trial)
            e = random_ensemble(int(rng.integers(2, 5)), int(rng.integers(2, 6)), rng, pure=True)
            assert abs(pure_bound(e) - spectral_bound(e)) <= 1e-12

    def test_exact_equality_on_basis_states(self, worked_example):
        e = worked_example.ensemble
        assert pure_bound(e) == spectral_bound(e)


class TestBoundReport:
    def test_worked_example(self, worked_example):
        report = bound_report(worked_example.ensemble)
        assert report.effective_dimension == 2
        assert report.classical_top_d == report.spectral_bound == report.pure_bound
        assert report.dimension_ceiling == 1.0

    def test_pure_flag_presence(self):
        rng = np.random.default_rng(207)
        mixed = random_ensemble(3, 2, rng)
        assert bound_report(mixed).pure_bound is None
        pure = random_ensemble(3, 2, rng, pure=True)
        report = bound_report(pure)
        assert report.pure_bound is not None
        assert abs(report.pure_bound - report.spectral_bound) <= 1e-9

    def test_invariants_on_random_ensembles(self):
        for trial in range(20):
            rng = np.random.default_rng(208 + trial)
            e = random_ensemble(int(rng.integers(2, 5)), int(rng.integers(1, 6)), rng,
                                pure=trial % 2 == 0)
            report = bound_report(e)
            assert report.spectral_bound <= min(1.0, report.dimension_ceiling) + 1e-12
            if report.pure_bound is not None:
                assert abs(report.pure_bound - report.spectral_bound) <= 1e-9

    def test_unitary_invariance(self):
        rng = np.random.default_rng(209)
        for _ in range(10):
            e = random_ensemble(3, 3, rng)
            u = haar_unitary(3, rng)
            rotated = Ensemble(3, e.priors,
                               np.einsum("ab,ibc,dc->iad", u, e.states, u.conj()))
            a, b = bound_report(e), bound_report(rotated)
            assert abs(a.spectral_bound - b.spectral_bound) <= 1e-9
            assert abs(a.dimension_ceiling - b.dimension_ceiling) <= 1e-9
            assert abs(a.classical_top_d - b.classical_top_d) <= 1e-9
            assert a.effective_dimension == b.effective_dimension
