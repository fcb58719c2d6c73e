"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import time

import numpy as np

from statedisc import Ensemble
from statedisc.bounds import (
    classical_top_d,
    dimension_ceiling,
    pure_bound,
    spectral_bound,
)
from statedisc.constructions import mixed_tight, pure_tight
from statedisc.ensemble import compress, joint_support_dimension
from statedisc.measurement import extract_certificate, success_probability
from statedisc.sampling import (
    haar_unitary,
    random_ensemble,
    random_model_measurement,
    random_spectrum,
)
from statedisc.solvers import (
    SolverConfig,
    brute_force_qubit,
    helstrom,
    optimize_povm,
    pgm,
)
from statedisc.measurement import success_probability_povm

from conftest import THREE_MESSAGE_PRIORS, trine_ensemble


def _report(number: int, ok: bool, elapsed: float, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number}: {status} ({elapsed:.2f}s) {detail}")
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_1_worked_example():
    start = time.time()
    instance = pure_tight(THREE_MESSAGE_PRIORS, 2)
    e = instance.ensemble
    cl = classical_top_d(e.priors, 2)
    pb = pure_bound(e)
    sb = spectral_bound(e)
    ceiling = dimension_ceiling(e)
    achieved = success_probability(e, instance.measurement)
    solved = optimize_povm(e, SolverConfig(restarts=1)).success
    elapsed = time.time() - start
    ok = (
        cl == pb == sb
        and abs(cl - 5.0 / 6.0) <= 1e-15
        and ceiling == 1.0
        and abs(achieved - 5.0 / 6.0) <= 1e-10
        and 5.0 / 6.0 - 1e-6 <= solved <= 5.0 / 6.0 + 1e-9
        and elapsed < 1.0
    )
    _report(1, ok, elapsed,
            f"bounds={cl!r} ceiling={ceiling!r} achieved={achieved!r} solver={solved!r}")


def test_criterion_2_trine():
    start = time.time()
    e = trine_ensemble()
    sb = spectral_bound(e)
    pgm_value = success_probability_povm(e, pgm(e))
    solved = optimize_povm(e, SolverConfig(restarts=1)).success
    elapsed = time.time() - start
    ok = (
        abs(sb - 2.0 / 3.0) <= 1e-15
        and abs(pgm_value - 2.0 / 3.0) <= 1e-6
        and abs(solved - 2.0 / 3.0) <= 1e-6
        and elapsed < 1.0
    )
    _report(2, ok, elapsed, f"spectral={sb!r} pgm={pgm_value!r} solver={solved!r}")


def test_criterion_3_helstrom_cross_check():
    start = time.time()
    worst = 0.0
    for trial in range(200):
        rng = np.random.default_rng(30_000 + trial)
        d = 2 if trial % 2 == 0 else 3
        e = random_ensemble(d, 2, rng)
        gap = abs(optimize_povm(e, SolverConfig(restarts=1)).success - helstrom(e))
        worst = max(worst, gap)
    elapsed = time.time() - start
    ok = worst <= 1e-5 and elapsed < 30.0
    _report(3, ok, elapsed, f"worst |fixed_point - helstrom| = {worst:.3e} over 200 ensembles")


def test_criterion_4_bound_dominance_sweep():
    start = time.time()
    cfg = SolverConfig(max_iters=300, restarts=1)
    worst_solver_excess = -np.inf
    worst_chain_excess = -np.inf
    worst_pure_gap = 0.0
    pure_count = 0
    for trial in range(1000):
        rng = np.random.default_rng(40_000 + trial)
        d = int(rng.integers(2, 5))
        m = int(rng.integers(2, 7))
        pure = trial % 4 == 0
        e = random_ensemble(d, m, rng, pure=pure)
        sb = spectral_bound(e)
        ceiling = dimension_ceiling(e)
        solved = optimize_povm(e, cfg).success
        worst_solver_excess = max(worst_solver_excess, solved - sb)
        worst_chain_excess = max(worst_chain_excess, sb - min(1.0, ceiling))
        if pure:
            pure_count += 1
            d_eff = joint_support_dimension(e)
            worst_pure_gap = max(
                worst_pure_gap, abs(sb - classical_top_d(e.priors, d_eff))
            )
    elapsed = time.time() - start
    ok = (
        worst_solver_excess <= 1e-9
        and worst_chain_excess <= 1e-12
        and worst_pure_gap <= 1e-12
        and elapsed < 180.0
    )
    _report(4, ok, elapsed,
            f"solver excess {worst_solver_excess:.2e}, chain excess {worst_chain_excess:.2e}, "
            f"pure gap {worst_pure_gap:.2e} ({pure_count} pure rows)")


def test_criterion_5_certificate_suite():
    start = time.time()
    worst_low = 0.0
    worst_high = 0.0
    worst_total = -np.inf
    worst_identity = 0.0
    for trial in range(500):
        rng = np.random.default_rng(50_000 + trial)
        d = int(rng.integers(2, 5))
        m = int(rng.integers(2, 6))
        e = random_ensemble(d, m, rng, pure=trial % 5 == 0)
        meas = random_model_measurement(d, m, rng)
        cert = extract_certificate(e, meas)
        values = np.array([b.s_value for b in cert.budgets])
        worst_low = max(worst_low, float(-values.min()))
        worst_high = max(worst_high, float(values.max()) - 1.0)
        worst_total = max(worst_total, cert.total - d)
        direct = success_probability(e, meas)
        worst_identity = max(worst_identity, abs(cert.reproduced_success - direct))
    elapsed = time.time() - start
    ok = (
        worst_low <= 1e-10
        and worst_high <= 1e-10
        and worst_total <= 1e-9
        and worst_identity <= 1e-10
    )
    _report(5, ok, elapsed,
            f"s in [-{worst_low:.1e}, 1+{max(worst_high, 0.0):.1e}], "
            f"total excess {worst_total:.2e}, identity gap {worst_identity:.2e}")


def test_criterion_6_sharpness():
    start = time.time()
    worst_pure = 0.0
    worst_mixed = 0.0
    for trial in range(100):
        rng = np.random.default_rng(60_000 + trial)
        m = int(rng.integers(2, 7))
        d = int(rng.integers(1, m + 1))
        instance = pure_tight(rng.dirichlet(np.ones(m)), d)
        achieved = success_probability(instance.ensemble, instance.measurement)
        worst_pure = max(worst_pure, abs(achieved - instance.claimed_value))
        worst_pure = max(
            worst_pure, abs(instance.claimed_value - spectral_bound(instance.ensemble))
        )
    for trial in range(100):
        rng = np.random.default_rng(61_000 + trial)
        d = int(rng.integers(2, 5))
        m = int(rng.integers(2, 5))
        instance = mixed_tight(random_spectrum(d, m, rng), d)
        achieved = success_probability(instance.ensemble, instance.measurement)
        worst_mixed = max(worst_mixed, abs(achieved - instance.claimed_value))
        worst_mixed = max(
            worst_mixed, abs(instance.claimed_value - spectral_bound(instance.ensemble))
        )
    elapsed = time.time() - start
    ok = worst_pure <= 1e-10 and worst_mixed <= 1e-10
    _report(6, ok, elapsed,
            f"pure construction gap {worst_pure:.2e}, mixed construction gap {worst_mixed:.2e}")


def test_criterion_7_oracle_triangulation():
    start = time.time()
    # tight stopping gain: the grid oracle resolves the optimum to ~1e-9,
    # so the solver's terminal error must sit well below that
    cfg = SolverConfig(tol=1e-13, restarts=1)
    worst_grid_excess = -np.inf
    worst_shortfall = -np.inf
    for trial in range(50):
        rng = np.random.default_rng(70_000 + trial)
        m = int(rng.integers(2, 4))
        e = random_ensemble(2, m, rng, pure=trial % 2 == 0)
        grid_value = brute_force_qubit(e, grid=400)
        solved = optimize_povm(e, cfg).success
        worst_grid_excess = max(worst_grid_excess, grid_value - solved)
        worst_shortfall = max(worst_shortfall, solved - grid_value)
    elapsed = time.time() - start
    ok = worst_grid_excess <= 1e-9 and worst_shortfall <= 2e-3
    _report(7, ok, elapsed,
            f"grid excess {worst_grid_excess:.2e}, solver lead {worst_shortfall:.2e}")


def test_criterion_8_invariance():
    start = time.time()
    cfg = SolverConfig(restarts=1)
    worst_conjugation = 0.0
    worst_embedding = 0.0

    def summary(e: Ensemble) -> dict:
        values = {
            "spectral": spectral_bound(e),
            "ceiling": dimension_ceiling(e),
            "classical": classical_top_d(e.priors, joint_support_dimension(e)),
            "solver": optimize_povm(e, cfg).success,
        }
        return values

    for trial in range(100):
        rng = np.random.default_rng(80_000 + trial)
        d = int(rng.integers(2, 4))
        m = int(rng.integers(2, 5))
        pure = trial % 3 == 0
        e = random_ensemble(d, m, rng, pure=pure)
        base = summary(e)
        if pure:
            base["pure"] = pure_bound(e)

        u = haar_unitary(d, rng)
        rotated = Ensemble(d, e.priors,
                           np.einsum("ab,ibc,dc->iad", u, e.states, u.conj()))
        conj = summary(rotated)
        if pure:
            conj["pure"] = pure_bound(rotated)
        for key in base:
            worst_conjugation = max(worst_conjugation, abs(base[key] - conj[key]))

        w = haar_unitary(d + 2, rng)[:, :d]
        embedded = Ensemble(d + 2, e.priors,
                            np.einsum("ab,ibc,dc->iad", w, e.states, w.conj()))
        reduced, _ = compress(embedded)
        emb = summary(reduced)
        if pure:
            emb["pure"] = pure_bound(reduced)
        for key in base:
            worst_embedding = max(worst_embedding, abs(base[key] - emb[key]))

    elapsed = time.time() - start
    ok = worst_conjugation <= 1e-7 and worst_embedding <= 1e-9
    _report(8, ok, elapsed,
            f"conjugation drift {worst_conjugation:.2e}, embedding drift {worst_embedding:.2e}")
