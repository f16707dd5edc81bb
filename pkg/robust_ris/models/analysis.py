"""
Closed-Form Analysis
LoS optimum, MISO lower bound and the MSE floors of isolated impairments
"""
from typing import Tuple
import logging
import math

import numpy as np
from scipy import linalg

from robust_ris.exceptions import DimensionError, RankError
from robust_ris.models.channels import los_gains, ula_steering
from robust_ris.models.mse import effective_channel
from robust_ris.models.system import distortion_constants
from robust_ris.schemas.analysis import LosCoefficients, MisoBoundInputs
from robust_ris.schemas.channel import ChannelEstimate
from robust_ris.schemas.geometry import LoSAngles
from robust_ris.schemas.system import DistortionConstants, PhaseCodebook, SystemConfig
from robust_ris.utils.helpers import CONDITION_LIMIT, hermitian_condition, hermitize, wrap_phase

logger = logging.getLogger(__name__)


def _impairment_offset(cfg: SystemConfig, error_variance: float) -> float:
    """(1 + beta_t^2 + beta_r^2) times the total CSI-error variance"""
    return (1.0 + cfg.beta_t ** 2 + cfg.beta_r ** 2) * error_variance


# Line of sight

def best_discrete_alignment(coeffs: np.ndarray, codebook: PhaseCodebook) -> np.ndarray:
    """Codebook vector maximizing |sum_m coeffs_m theta_m|

    The optimum rounds psi - angle(coeffs) to the codebook for some common
    offset psi, and the rounding only changes at finitely many offsets.
    """
    base = -np.angle(coeffs)
    half_step = np.pi / codebook.size
    edges = wrap_phase((-base[:, None] + codebook.phases[None, :] + half_step).reshape(-1))
    edges = np.sort(np.concatenate([edges, [0.0]]))
    offsets = 0.5 * (edges + np.roll(edges, -1))
    offsets[-1] = wrap_phase(edges[-1] + 0.5 * (edges[0] + 2.0 * np.pi - edges[-1]))
    offsets = np.concatenate([[0.0], offsets])

    best, best_value = None, -math.inf
    for psi in offsets:
        theta = codebook.project(base + psi)
        value = abs(np.sum(coeffs * theta))
        if value > best_value + 1e-15:
            best, best_value = theta, value
    return best


def los_coefficients(
    cfg: SystemConfig, angles: LoSAngles, consts: DistortionConstants, theta: np.ndarray
) -> LosCoefficients:
    """Scalars of the pure-LoS objective at a given phase vector"""
    nu = los_gains(angles)
    c1 = (1.0 - consts.eps_b) * abs(np.sum(nu * theta)) ** 2
    c2 = (1.0 + cfg.beta_r ** 2) * cfg.noise_var
    c3 = _impairment_offset(cfg, cfg.sigma_d_sq + cfg.n_ris * cfg.sigma_m_sq)
    return LosCoefficients(c1=c1, c2=c2, c3=c3, nu_m_list=nu)


def los_objective(cfg: SystemConfig, coeffs: LosCoefficients, consts: DistortionConstants) -> float:
    """g_MSE of the full-power precoder matched to a_TX on the rank-1 channel"""
    p = cfg.power_target
    spread = coeffs.c1 + consts.eps_b * float(np.sum(np.abs(coeffs.nu_m_list) ** 2))
    denominator = (
        spread * p * (1.0 + cfg.beta_t ** 2 / cfg.n_tx + cfg.beta_r ** 2 / cfg.n_rx)
        + coeffs.c2
        + coeffs.c3 * p
    )
    return coeffs.c1 * p / denominator


def los_optimal(
    cfg: SystemConfig, angles: LoSAngles, consts: DistortionConstants, codebook: PhaseCodebook
) -> Tuple[np.ndarray, np.ndarray, float]:
    """Optimal single-stream precoder, phases and g_MSE on a pure-LoS channel without direct link"""
    if cfg.n_streams != 1:
        raise DimensionError("the LoS optimum is defined for a single stream")
    a_tx = ula_steering(cfg.n_tx, angles.psi_tx, angles.spacing_ratio)
    w_star = (math.sqrt(cfg.power_target) * a_tx / np.linalg.norm(a_tx))[:, None]
    theta_star = best_discrete_alignment(los_gains(angles), codebook)
    g_star = los_objective(cfg, los_coefficients(cfg, angles, consts, theta_star), consts)
    return w_star, theta_star, g_star


# MISO

def _miso_vectors(est: ChannelEstimate) -> Tuple[np.ndarray, np.ndarray]:
    """Direct channel and the N_T x M matrix of compound channels as column vectors"""
    if est.n_rx != 1:
        raise DimensionError(f"MISO analysis needs a single receive antenna, got {est.n_rx}")
    return est.h_d_bar[0], est.g_bars[:, 0, :].T


def miso_bound_inputs(est: ChannelEstimate, cfg: SystemConfig, consts: DistortionConstants) -> MisoBoundInputs:
    """Stacked channel vectors and the impairment covariance Q"""
    h_d, g = _miso_vectors(est)
    h_tilde = np.column_stack([h_d, consts.omega_b * g])
    outer = np.einsum("im,jm->ij", g, g.conj())
    q = (
        _impairment_offset(cfg, est.total_error_variance) * np.eye(est.n_tx)
        + consts.eps_b * ((1.0 + cfg.beta_r ** 2) * outer + cfg.beta_t ** 2 * np.diag(np.sum(np.abs(g) ** 2, axis=1)))
    )
    return MisoBoundInputs(h_tilde_cat=h_tilde, q=hermitize(q))


def _max_whitened_gain(h_tilde: np.ndarray, r: np.ndarray) -> float:
    """Largest eigenvalue of H^H R^-1 H, taken on the smaller Gram side"""
    chol = linalg.cholesky(r, lower=True)
    x = linalg.solve_triangular(chol, h_tilde, lower=True)
    gram = x.conj().T @ x if x.shape[1] < x.shape[0] else x @ x.conj().T
    return float(linalg.eigvalsh(hermitize(gram))[-1])


def _bound_from_gain(gain: float, n_ris: int, beta_r: float) -> float:
    scaled = (n_ris + 1) * gain
    return 1.0 - scaled / (1.0 + (1.0 + beta_r ** 2) * scaled)


def miso_lower_bound(est: ChannelEstimate, cfg: SystemConfig, consts: DistortionConstants) -> float:
    """Lower bound on the MISO ANMSE over all precoders and phases"""
    inputs = miso_bound_inputs(est, cfg, consts)
    r = inputs.q + (1.0 + cfg.beta_t ** 2) * (cfg.noise_var / cfg.power) * np.eye(est.n_tx)
    return _bound_from_gain(_max_whitened_gain(inputs.h_tilde_cat, r), est.n_ris, cfg.beta_r)


def miso_floor(est: ChannelEstimate, cfg: SystemConfig, consts: DistortionConstants) -> float:
    """High-SNR limit of the MISO lower bound"""
    inputs = miso_bound_inputs(est, cfg, consts)
    if hermitian_condition(inputs.q) > CONDITION_LIMIT:
        logger.info("Impairment covariance is singular; reporting the unbounded-gain limit")
        return 1.0 - 1.0 / (1.0 + cfg.beta_r ** 2)
    return _bound_from_gain(_max_whitened_gain(inputs.h_tilde_cat, inputs.q), est.n_ris, cfg.beta_r)


def miso_optimal_precoder(
    est: ChannelEstimate, theta: np.ndarray, cfg: SystemConfig, consts: DistortionConstants
) -> np.ndarray:
    """MSE-optimal MISO precoder for fixed phases (N_T x 1)"""
    _miso_vectors(est)
    h = effective_channel(est, theta, consts)[0]
    inputs = miso_bound_inputs(est, cfg, consts)
    c2 = (1.0 + cfg.beta_r ** 2) * cfg.noise_var
    # quadratic forms in the conjugate precoder: |h^T w|^2 = |h^H conj(w)|^2
    r = (
        inputs.q
        + cfg.beta_t ** 2 * np.diag(np.abs(h) ** 2)
        + (c2 / cfg.power_target) * np.eye(est.n_tx)
    )
    direction = np.conj(linalg.solve(hermitize(r), h, assume_a="pos"))
    w = math.sqrt(cfg.power_target) * direction / np.linalg.norm(direction)
    return w[:, None]


def floor_hwi(n_tx: int, beta_t: float, beta_r: float) -> float:
    """ANMSE floor from transceiver distortion with ideal RIS and perfect CSI"""
    if n_tx < 1:
        raise DimensionError("n_tx must be positive")
    return 1.0 - n_tx / (beta_t ** 2 + (1.0 + beta_r ** 2) * n_tx)


def floor_csi(
    est: ChannelEstimate, theta_t: np.ndarray, sigma_d_sq: float, sigma_m_sq_total: float
) -> float:
    """ANMSE floor from CSI error with ideal hardware"""
    h_d, g = _miso_vectors(est)
    gain = float(np.linalg.norm(h_d + g @ theta_t) ** 2)
    return 1.0 - gain / (sigma_d_sq + sigma_m_sq_total + gain)


def floor_phase_noise(est: ChannelEstimate, theta_t: np.ndarray, bits: int) -> float:
    """ANMSE floor from RIS phase noise with ideal transceivers and perfect CSI"""
    h_d, g = _miso_vectors(est)
    omega = distortion_constants(bits).omega_b
    gram = hermitize(g @ g.conj().T)
    if hermitian_condition(gram) > CONDITION_LIMIT:
        raise RankError("compound channels do not span the transmit space (needs M >= N_T)")
    pinv = g.conj().T @ linalg.solve(gram, np.eye(est.n_tx), assume_a="pos")

    eps = 1.0 - omega ** 2
    reflected = omega ** 2 * np.real(np.vdot(theta_t, pinv @ g @ theta_t))
    cross = 2.0 * omega * np.real(np.vdot(theta_t, pinv @ h_d))
    direct = np.real(np.vdot(h_d, linalg.solve(gram, h_d, assume_a="pos")))
    return float(eps / (eps + reflected + cross + direct))
