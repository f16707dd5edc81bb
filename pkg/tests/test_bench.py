"""
Benchmark Harness Tests
"""
import math

import numpy as np
import pytest

from robust_ris.data_processor import ReportProcessor, emit_csv, read_csv
from robust_ris.exceptions import InvalidConfigError, ReportIOError
from robust_ris.models.system import distortion_constants, phase_codebook
from robust_ris.schemas.bench import CSV_COLUMNS, Scheme, SweepReport, SweepSpec, SweepVariable
from robust_ris.schemas.geometry import Geometry
from robust_ris.services.scheme_service import CONTINUOUS_BITS, run_scheme
from robust_ris.services.sweep_service import apply_sweep_value, run_sweep
from robust_ris.utils.helpers import dbm_to_watts, trial_rng
from tests.factories import make_config, make_estimate


def _bench_config(**overrides):
    fields = dict(
        n_ris=4,
        power=dbm_to_watts(20.0),
        noise_var=dbm_to_watts(-100.0),
        csi_error_mode="relative",
    )
    fields.update(overrides)
    return make_config(**fields)


@pytest.mark.parametrize("scheme", list(Scheme))
def test_every_scheme_runs(scheme):
    """Each scheme returns a feasible, evaluated solution"""
    cfg = make_config(n_ris=6)
    est = make_estimate(cfg, trial_rng(1))
    solution = run_scheme(scheme, est, cfg, distortion_constants(cfg.bits), trial_rng(2))
    assert 0 < solution.anmse <= 1
    bits = CONTINUOUS_BITS if scheme == Scheme.PERFECT_HARDWARE else cfg.bits
    assert phase_codebook(bits).contains(solution.theta)


def test_identity_phase_scheme_keeps_ones():
    """The identity baseline never moves the phases"""
    cfg = make_config(n_ris=6)
    est = make_estimate(cfg, trial_rng(1))
    solution = run_scheme(Scheme.IDENTITY_PHASE, est, cfg, distortion_constants(cfg.bits), trial_rng(2))
    np.testing.assert_allclose(solution.theta, np.ones(6))


def test_nonrobust_matches_robust_without_impairments():
    """With nothing to be robust to the two designs coincide"""
    cfg = make_config(n_ris=6, bits=14, beta_t=0.0, beta_r=0.0, sigma_d_sq=0.0, sigma_m_sq=0.0)
    est = make_estimate(cfg, trial_rng(3))
    consts = distortion_constants(cfg.bits)
    robust = run_scheme(Scheme.AO_MM, est, cfg, consts, trial_rng(4))
    naive = run_scheme(Scheme.NONROBUST, est, cfg, consts, trial_rng(4))
    assert abs(naive.anmse - robust.anmse) <= 0.01 * robust.anmse


def test_apply_sweep_value():
    """Sweep points map onto config fields"""
    cfg = _bench_config()
    assert abs(apply_sweep_value(cfg, SweepVariable.POWER_DBM, 30.0).power - 1.0) < 1e-12
    assert apply_sweep_value(cfg, "bits", 3.0).bits == 3
    assert apply_sweep_value(cfg, "n_ris", 8).n_ris == 8
    assert apply_sweep_value(cfg, "beta_r", 0.12).beta_r == 0.12
    assert apply_sweep_value(cfg, "sigma_d_sq", 0.5).sigma_d_sq == 0.5


def test_apply_sweep_value_errors():
    """Unknown variables and fractional counts are config errors"""
    cfg = _bench_config()
    with pytest.raises(InvalidConfigError):
        apply_sweep_value(cfg, "n_antennas", 4)
    with pytest.raises(InvalidConfigError):
        apply_sweep_value(cfg, "bits", 2.5)
    with pytest.raises(InvalidConfigError):
        apply_sweep_value(cfg, "bits", 20)


def test_sweep_spec_validation():
    """Empty values and zero trials are rejected"""
    with pytest.raises(ValueError):
        SweepSpec(variable="beta_r", values=[], trials=3)
    with pytest.raises(ValueError):
        SweepSpec(variable="beta_r", values=[0.1], trials=0)
    with pytest.raises(ValueError):
        SweepSpec(variable="noise", values=[0.1])


def test_single_trial_sweep():
    """One value, one scheme, one trial gives one row with zero spread"""
    spec = SweepSpec(variable="beta_r", values=[0.08], trials=1, seed=3)
    report = run_sweep(spec, _bench_config(), Geometry(), [Scheme.AO_MM], n_jobs=1)
    assert len(report.rows) == 1
    row = report.rows[0]
    assert row.scheme == "ao_mm" and row.variable == "beta_r"
    assert row.anmse_std == 0.0
    assert 0 < row.anmse_mean <= 1
    assert row.mean_wallclock_s == 0.0


def test_sweep_row_count_and_accounting():
    """One row per (value, scheme) and every trial accounted for"""
    spec = SweepSpec(variable="power_dbm", values=[10, 20, 30], trials=2, seed=1)
    schemes = [Scheme.AO_MM, Scheme.RANDOM_PHASE]
    report = run_sweep(spec, _bench_config(), Geometry(), schemes, n_jobs=1)
    assert len(report.rows) == 6
    assert [(r.value, r.scheme) for r in report.rows] == [
        (v, s.value) for v in (10.0, 20.0, 30.0) for s in schemes
    ]
    for entry in report.accounting:
        assert entry.completed + entry.failed == spec.trials


def test_sweep_is_deterministic(tmp_path):
    """Same seed, byte-identical CSV"""
    spec = SweepSpec(variable="bits", values=[1, 2], trials=2, seed=9)
    paths = []
    for name in ("a.csv", "b.csv"):
        report = run_sweep(spec, _bench_config(), Geometry(), [Scheme.AO_MM, Scheme.NONROBUST], n_jobs=1)
        paths.append(emit_csv(report, tmp_path / name))
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_sweep_parallel_matches_serial():
    """Worker count does not change the numbers"""
    spec = SweepSpec(variable="n_ris", values=[4], trials=3, seed=5)
    serial = run_sweep(spec, _bench_config(), Geometry(), [Scheme.AO_RGA], n_jobs=1)
    parallel = run_sweep(spec, _bench_config(), Geometry(), [Scheme.AO_RGA], n_jobs=2)
    assert serial.rows == parallel.rows


def test_empty_report_csv(tmp_path):
    """An empty report writes only the header"""
    path = emit_csv(SweepReport(), tmp_path / "empty.csv")
    assert path.read_text(encoding="utf-8") == ",".join(CSV_COLUMNS) + "\n"
    assert read_csv(path).rows == []


def test_csv_round_trip(tmp_path):
    """Parsed rows equal the written ones to the printed precision"""
    spec = SweepSpec(variable="beta_t", values=[0.0, 0.1], trials=2, seed=2)
    report = run_sweep(spec, _bench_config(), Geometry(), [Scheme.IDENTITY_PHASE], n_jobs=1)
    path = emit_csv(report, tmp_path / "nested" / "out.csv")
    text = path.read_bytes()
    assert b"\r\n" not in text
    assert text.splitlines()[0] == b"variable,value,scheme,anmse_mean,anmse_std,mean_iterations,mean_wallclock_s"

    parsed = read_csv(path)
    assert len(parsed.rows) == len(report.rows)
    for got, want in zip(parsed.rows, report.rows):
        assert got.scheme == want.scheme and got.variable == want.variable
        assert math.isclose(got.anmse_mean, want.anmse_mean, rel_tol=1e-9)
        assert math.isclose(got.anmse_std, want.anmse_std, rel_tol=1e-9, abs_tol=1e-300)


def test_timing_column_when_requested():
    """Wall-clock means appear only when timing is on"""
    spec = SweepSpec(variable="beta_r", values=[0.08], trials=1, seed=0)
    report = run_sweep(spec, _bench_config(), Geometry(), [Scheme.AO_MM], n_jobs=1, record_timing=True)
    assert report.rows[0].mean_wallclock_s > 0


def test_unwritable_path(tmp_path):
    """I/O failures carry the path"""
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(ReportIOError, match="file"):
        ReportProcessor().emit_csv(SweepReport(), blocker / "out.csv")
