"""
MSE Kernel
Received covariance, total average MSE, Wiener equalizer and the Monte-Carlo check
"""
from typing import Tuple
import logging
import math

import numpy as np
from scipy import linalg

from robust_ris.schemas.channel import ChannelEstimate, TrueChannelSample
from robust_ris.schemas.solution import CovarianceBundle
from robust_ris.schemas.system import DistortionConstants, SystemConfig
from robust_ris.utils.helpers import checked_cho_factor, cscg, diag_part, hermitize

logger = logging.getLogger(__name__)

MC_BATCH = 4096


def effective_channel(est: ChannelEstimate, theta: np.ndarray, consts: DistortionConstants) -> np.ndarray:
    """Mean cascaded channel H_d + omega_b sum_m theta_m G_m"""
    return est.h_d_bar + consts.omega_b * np.tensordot(theta, est.g_bars, axes=1)


def received_covariance(
    w: np.ndarray,
    theta: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
    exact_distortion: bool = False,
) -> CovarianceBundle:
    """Expected received covariance over CSI errors and phase noise

    With exact_distortion the receiver distortion also sees the transmitter
    distortion (the beta_t^2 beta_r^2 cross term); by default it is dropped.
    """
    bt2, br2 = cfg.beta_t ** 2, cfg.beta_r ** 2
    h = effective_channel(est, theta, consts)
    wwh = w @ w.conj().T
    p_diag = np.real(np.diag(wwh))
    tx_power = float(p_diag.sum())

    signal = h @ wwh @ h.conj().T
    tx_distortion = (h * p_diag) @ h.conj().T
    t_cas = signal + bt2 * tx_distortion + br2 * diag_part(signal)

    gw = est.g_bars @ w
    com_signal = np.einsum("mik,mjk->ij", gw, gw.conj())
    com_distortion = np.einsum("mik,k,mjk->ij", est.g_bars, p_diag, est.g_bars.conj())
    t_com = com_signal + bt2 * com_distortion + br2 * diag_part(com_signal)

    error_gain = 1.0 + bt2 + br2
    if exact_distortion:
        cross = bt2 * br2
        t_cas = t_cas + cross * diag_part(tx_distortion)
        t_com = t_com + cross * diag_part(com_distortion)
        error_gain += cross
    si_scale = (1.0 + br2) * cfg.noise_var + error_gain * tx_power * est.total_error_variance
    t_si = si_scale * np.eye(est.n_rx)

    y_total = hermitize(t_cas + consts.eps_b * t_com + t_si)
    return CovarianceBundle(
        h_bar_theta=h,
        t_cas=hermitize(t_cas),
        t_com=hermitize(t_com),
        t_si=t_si,
        y_total=y_total,
    )


def wiener_equalizer(
    w: np.ndarray,
    theta: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
) -> np.ndarray:
    """MMSE equalizer C = W^H H^H Y^-1"""
    cov = received_covariance(w, theta, est, cfg, consts)
    factor = checked_cho_factor(cov.y_total)
    c_h = linalg.cho_solve(factor, cov.h_bar_theta @ w, check_finite=False)
    return c_h.conj().T


def total_average_mse(
    c: np.ndarray,
    w: np.ndarray,
    theta: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
) -> float:
    """Tr(I - C H W - W^H H^H C^H + C Y C^H)"""
    cov = received_covariance(w, theta, est, cfg, consts)
    chw = c @ cov.h_bar_theta @ w
    mse = np.eye(w.shape[1]) - chw - chw.conj().T + c @ cov.y_total @ c.conj().T
    return float(np.real(np.trace(mse)))


def g_mse(
    w: np.ndarray,
    theta: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
) -> float:
    """Post-equalizer objective Tr(W^H H^H Y^-1 H W)"""
    cov = received_covariance(w, theta, est, cfg, consts)
    x = cov.h_bar_theta @ w
    factor = checked_cho_factor(cov.y_total)
    return float(np.real(np.vdot(x, linalg.cho_solve(factor, x, check_finite=False))))


def _mse_matrices(
    c: np.ndarray,
    w: np.ndarray,
    h_cas: np.ndarray,
    cfg: SystemConfig,
    exact_distortion: bool,
) -> np.ndarray:
    """Conditional MSE matrices for a batch of true cascaded channels (B x N_R x N_T)"""
    bt2, br2 = cfg.beta_t ** 2, cfg.beta_r ** 2
    n_rx = h_cas.shape[-2]
    p_diag = np.real(np.einsum("ik,ik->i", w, w.conj()))

    x = h_cas @ w
    x_h = np.swapaxes(x, -1, -2).conj()
    signal = x @ x_h
    tx_distortion = (h_cas * p_diag) @ np.swapaxes(h_cas, -1, -2).conj()
    noise = cfg.noise_var * np.eye(n_rx)

    cov = signal + noise + bt2 * tx_distortion + br2 * diag_part(signal) + br2 * noise
    if exact_distortion:
        cov = cov + bt2 * br2 * diag_part(tx_distortion)

    chw = c @ x
    return np.eye(w.shape[1]) - chw - np.swapaxes(chw, -1, -2).conj() + c @ cov @ c.conj().T


def mse_matrix_sample(
    c: np.ndarray,
    w: np.ndarray,
    sample: TrueChannelSample,
    theta: np.ndarray,
    cfg: SystemConfig,
    exact_distortion: bool = False,
) -> np.ndarray:
    """MSE matrix conditioned on one true channel and phase-noise draw"""
    actual = theta * np.exp(1j * sample.phase_noise)
    h_cas = sample.h_d + np.tensordot(actual, sample.g_list, axes=1)
    return hermitize(_mse_matrices(c, w, h_cas[None], cfg, exact_distortion)[0])


def mc_average_mse(
    c: np.ndarray,
    w: np.ndarray,
    theta: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    n_samples: int,
    rng: np.random.Generator,
    exact_distortion: bool = False,
) -> Tuple[float, float]:
    """Sample mean and standard error of Tr(MSE) over CSI errors and phase noise"""
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    half_width = np.pi / 2 ** cfg.bits
    traces = []
    remaining = n_samples
    while remaining > 0:
        batch = min(MC_BATCH, remaining)
        h_d = est.h_d_bar + cscg(rng, (batch,) + est.h_d_bar.shape, est.sigma_d_sq)
        g = est.g_bars + cscg(rng, (batch,) + est.g_bars.shape, est.sigma_m_sq)
        actual = theta * np.exp(1j * rng.uniform(-half_width, half_width, size=(batch, est.n_ris)))
        h_cas = h_d + np.einsum("bm,bmij->bij", actual, g)
        mse = _mse_matrices(c, w, h_cas, cfg, exact_distortion)
        traces.append(np.real(np.trace(mse, axis1=-2, axis2=-1)))
        remaining -= batch

    values = np.concatenate(traces)
    mean = float(values.mean())
    std_err = float(values.std(ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else 0.0
    return mean, std_err
