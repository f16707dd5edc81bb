"""
Statistical Trend Tests
Desk-scale reproductions of the expected qualitative behaviour; run with -m slow
"""
import numpy as np
import pytest

from robust_ris.config_loader import BenchConfig
from robust_ris.models.analysis import los_optimal, miso_lower_bound
from robust_ris.models.channels import gen_channel_estimate, los_channel_estimate
from robust_ris.models.solver import ao_solve
from robust_ris.models.system import distortion_constants, phase_codebook
from robust_ris.schemas.bench import Scheme, SweepSpec
from robust_ris.schemas.geometry import Geometry, LoSAngles
from robust_ris.schemas.solution import RisMethod
from robust_ris.services.sweep_service import run_sweep
from robust_ris.utils.helpers import trial_rng
from tests.factories import make_config, make_estimate

pytestmark = pytest.mark.slow

DESK = BenchConfig().system


def _rows(report):
    return {(r.value, r.scheme): r for r in report.rows}


def _stderr(row, trials):
    return row.anmse_std / np.sqrt(trials)


def test_scheme_ordering():
    """Bounds below the robust designs, robust designs below the baselines"""
    trials = 100
    spec = SweepSpec(variable="power_dbm", values=[20.0], trials=trials, seed=2024)
    report = run_sweep(spec, DESK, Geometry(), list(Scheme))
    rows = {r.scheme: r for r in report.rows}

    def below(a, b):
        margin = max(_stderr(rows[a], trials), _stderr(rows[b], trials))
        return rows[a].anmse_mean + margin < rows[b].anmse_mean

    def not_above(a, b):
        return rows[a].anmse_mean <= rows[b].anmse_mean + _stderr(rows[b], trials)

    chain = [
        ("perfect_hardware", "perfect_csi"),
        ("perfect_csi", "ao_mm"),
        ("perfect_csi", "ao_rga"),
        ("ao_mm", "nonrobust"),
        ("ao_rga", "nonrobust"),
        ("nonrobust", "random_phase"),
        ("nonrobust", "identity_phase"),
    ]
    for lower, upper in chain:
        assert not_above(lower, upper), f"{lower} above {upper}"
    assert abs(rows["ao_mm"].anmse_mean - rows["ao_rga"].anmse_mean) <= 0.02 * rows["ao_mm"].anmse_mean
    assert below("perfect_hardware", "perfect_csi")
    assert below("ao_mm", "random_phase")
    assert below("ao_mm", "identity_phase")


def test_receiver_distortion_trend():
    """ANMSE rises with the receiver distortion level"""
    values = [0.0, 0.04, 0.08, 0.12]
    spec = SweepSpec(variable="beta_r", values=values, trials=50, seed=7)
    report = run_sweep(spec, DESK, Geometry(), [Scheme.AO_MM])
    means = [r.anmse_mean for r in report.rows]
    assert all(a < b for a, b in zip(means, means[1:]))


def test_quantization_gap_shrinks():
    """The robust advantage over the naive design is larger at one bit than at two"""
    trials = 100
    spec = SweepSpec(variable="bits", values=[1, 2], trials=trials, seed=11)
    rows = _rows(run_sweep(spec, DESK, Geometry(), [Scheme.AO_MM, Scheme.NONROBUST]))

    def gap(bits):
        naive, robust = rows[(bits, "nonrobust")], rows[(bits, "ao_mm")]
        return (naive.anmse_mean - robust.anmse_mean) / robust.anmse_mean

    spread = max(_stderr(rows[(1.0, "nonrobust")], trials), _stderr(rows[(1.0, "ao_mm")], trials))
    assert gap(1.0) - gap(2.0) > spread / rows[(1.0, "ao_mm")].anmse_mean


def test_more_elements_can_hurt():
    """Under large compound-channel errors a bigger surface does worse"""
    values = [0.1, 1.0, 10.0]
    reports = {}
    for n_ris in (16, 32):
        base = DESK.model_copy(update={"n_ris": n_ris})
        spec = SweepSpec(variable="sigma_m_sq", values=values, trials=30, seed=5)
        reports[n_ris] = _rows(run_sweep(spec, base, Geometry(), [Scheme.AO_MM]))
    assert any(
        reports[32][(v, "ao_mm")].anmse_mean > reports[16][(v, "ao_mm")].anmse_mean for v in values
    )


@pytest.mark.parametrize("method", [RisMethod.MM, RisMethod.RGA])
def test_convergence_within_twenty_iterations(method):
    """Traces are monotone and nearly all runs settle within 20 outer iterations"""
    converged = 0
    solves = 200
    for seed in range(solves):
        est = gen_channel_estimate(DESK, Geometry(), trial_rng(seed))
        solution = ao_solve(est, DESK, ris_method=method, tol=1e-4, max_outer=20)
        assert all(b >= a - 1e-9 for a, b in zip(solution.trace, solution.trace[1:]))
        converged += solution.converged
    assert converged >= 0.9 * solves


def test_mm_and_rga_agree():
    """Both phase updates end within 2% of each other on average"""
    gaps = []
    for seed in range(50):
        est = gen_channel_estimate(DESK, Geometry(), trial_rng(seed, 1))
        mm = ao_solve(est, DESK, ris_method=RisMethod.MM)
        rga = ao_solve(est, DESK, ris_method=RisMethod.RGA)
        gaps.append(abs(mm.objective - rga.objective) / mm.objective)
    assert np.mean(gaps) <= 0.02


def test_ao_reaches_los_optimum():
    """On pure LoS channels AO stays under and close to the closed form"""
    cfg = make_config(n_tx=4, n_rx=2, n_streams=1, n_ris=8, noise_var=0.01, sigma_d_sq=0.001, sigma_m_sq=0.001)
    consts = distortion_constants(cfg.bits)
    codebook = phase_codebook(cfg.bits)
    close = 0
    for seed in range(50):
        angles = LoSAngles.random(cfg.n_ris, trial_rng(seed))
        _, _, g_star = los_optimal(cfg, angles, consts, codebook)
        solution = ao_solve(los_channel_estimate(cfg, angles), cfg, consts)
        assert solution.objective <= g_star * (1 + 1e-9)
        close += solution.objective >= 0.99 * g_star
    assert close >= 45


def test_solver_respects_miso_bound_over_many_instances():
    """Across 50 single-stream instances no AO design beats the MISO bound"""
    cfg = make_config(n_tx=4, n_rx=1, n_streams=1, n_ris=4)
    consts = distortion_constants(cfg.bits)
    for seed in range(50):
        est = make_estimate(cfg, trial_rng(seed, 8))
        bound = miso_lower_bound(est, cfg, consts)
        for method in (RisMethod.MM, RisMethod.RGA):
            solution = ao_solve(est, cfg, consts, ris_method=method)
            assert solution.anmse >= bound - 1e-9, f"seed {seed} {method}"
