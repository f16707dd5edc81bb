"""
Self-Test Service
Fast oracle checks of the numerical kernels on small random instances
"""
from typing import Callable, List, Tuple
import logging
import math

import numpy as np
from pydantic import BaseModel

from robust_ris.models.analysis import floor_hwi, los_coefficients, los_optimal
from robust_ris.models.channels import gen_iid_estimate, los_channel_estimate
from robust_ris.models.mse import g_mse, mc_average_mse, total_average_mse, wiener_equalizer
from robust_ris.models.precoder_opt import build_surrogate, surrogate_value
from robust_ris.models.ris_mm import build_quadratic, kronecker_reference
from robust_ris.models.solver import svd_precoder
from robust_ris.models.system import distortion_constants, phase_codebook
from robust_ris.schemas.geometry import LoSAngles
from robust_ris.schemas.system import SystemConfig
from robust_ris.utils.helpers import cscg, trial_rng

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    """Outcome of one oracle check"""
    name: str
    passed: bool
    detail: str


def _small_case(rng: np.random.Generator, n: int = 2, m: int = 4):
    cfg = SystemConfig(
        n_tx=n, n_rx=n, n_streams=n, n_ris=m, bits=2, power=1.0, noise_var=0.1,
        beta_t=0.08, beta_r=0.08, sigma_d_sq=0.01, sigma_m_sq=0.01,
    )
    est = gen_iid_estimate(n, n, m, rng, cfg.sigma_d_sq, cfg.sigma_m_sq)
    consts = distortion_constants(cfg.bits)
    theta = phase_codebook(cfg.bits).random(m, rng)
    w = svd_precoder(est.h_d_bar, cfg)
    return cfg, est, consts, theta, w


def check_distortion_constants(rng: np.random.Generator) -> Tuple[bool, str]:
    err = max(
        abs(distortion_constants(1).eps_b - (1 - 4 / math.pi ** 2)),
        abs(distortion_constants(2).eps_b - (1 - 8 / math.pi ** 2)),
    )
    return err < 1e-12, f"max error {err:.2e}"


def check_wiener_identity(rng: np.random.Generator) -> Tuple[bool, str]:
    cfg, est, consts, theta, w = _small_case(rng)
    c = wiener_equalizer(w, theta, est, cfg, consts)
    gap = abs(total_average_mse(c, w, theta, est, cfg, consts) - (cfg.n_streams - g_mse(w, theta, est, cfg, consts)))
    return gap < 1e-10, f"|f - (d - g)| = {gap:.2e}"


def check_precoder_surrogate(rng: np.random.Generator) -> Tuple[bool, str]:
    cfg, est, consts, theta, w = _small_case(rng)
    s = build_surrogate(w, theta, est, cfg, consts)
    tight = abs(surrogate_value(s, w) - g_mse(w, theta, est, cfg, consts))
    worst = -math.inf
    for _ in range(20):
        w_other = cscg(rng, w.shape, 0.5)
        worst = max(worst, surrogate_value(s, w_other) - g_mse(w_other, theta, est, cfg, consts))
    return tight < 1e-9 and worst < 1e-9, f"tightness {tight:.2e}, worst excess {worst:.2e}"


def check_phase_quadratic(rng: np.random.Generator) -> Tuple[bool, str]:
    cfg, est, consts, theta, w = _small_case(rng, n=2, m=2)
    q = build_quadratic(w, theta, est, cfg, consts)
    ref = kronecker_reference(w, theta, est, cfg, consts)
    scale = max(1.0, np.abs(ref.k_bar).max())
    gap = max(np.abs(q.k_bar - ref.k_bar).max(), np.abs(q.xi_bar - ref.xi_bar).max()) / scale
    tight = abs(q.value(theta) - g_mse(w, theta, est, cfg, consts))
    return gap < 1e-8 and tight < 1e-9, f"Kronecker gap {gap:.2e}, tightness {tight:.2e}"


def check_monte_carlo(rng: np.random.Generator) -> Tuple[bool, str]:
    cfg, est, consts, theta, w = _small_case(rng)
    c = wiener_equalizer(w, theta, est, cfg, consts)
    analytic = total_average_mse(c, w, theta, est, cfg, consts)
    mean, std_err = mc_average_mse(c, w, theta, est, cfg, 20000, rng)
    gap = abs(mean - analytic)
    return gap <= max(4 * std_err, 0.01 * analytic), f"analytic {analytic:.5f}, sampled {mean:.5f} +- {std_err:.1e}"


def check_los_closed_form(rng: np.random.Generator) -> Tuple[bool, str]:
    cfg = SystemConfig(
        n_tx=4, n_rx=2, n_streams=1, n_ris=8, bits=2, power=1.0, noise_var=0.01,
        beta_t=0.08, beta_r=0.08, sigma_d_sq=0.001, sigma_m_sq=0.001, csi_error_mode="absolute",
    )
    consts = distortion_constants(cfg.bits)
    angles = LoSAngles.random(cfg.n_ris, rng)
    w_star, theta_star, g_star = los_optimal(cfg, angles, consts, phase_codebook(cfg.bits))
    direct = g_mse(w_star, theta_star, los_channel_estimate(cfg, angles), cfg, consts)
    gap = abs(direct - g_star)
    return gap < 1e-9 * max(1.0, g_star), f"closed form {g_star:.6g}, kernel {direct:.6g}"


def check_floor_hwi(rng: np.random.Generator) -> Tuple[bool, str]:
    value = floor_hwi(8, 0.08, 0.08)
    expected = 1.0 - 8.0 / (0.0064 + 1.0064 * 8.0)
    return abs(value - expected) < 1e-12, f"{value:.6f}"


CHECKS: List[Tuple[str, Callable[[np.random.Generator], Tuple[bool, str]]]] = [
    ("distortion constants", check_distortion_constants),
    ("wiener identity", check_wiener_identity),
    ("precoder surrogate", check_precoder_surrogate),
    ("phase quadratic", check_phase_quadratic),
    ("monte carlo expectation", check_monte_carlo),
    ("los closed form", check_los_closed_form),
    ("hardware floor", check_floor_hwi),
]


def run_selftest(seed: int = 0) -> List[CheckResult]:
    """Run every oracle check with its own seeded source"""
    results = []
    for index, (name, check) in enumerate(CHECKS):
        try:
            passed, detail = check(trial_rng(seed, index))
        except Exception as e:
            logger.error(f"Self-test {name} raised: {e}")
            passed, detail = False, f"raised {type(e).__name__}: {e}"
        results.append(CheckResult(name=name, passed=bool(passed), detail=detail))
    return results
