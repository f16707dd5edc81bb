"""
Channel Generator
Path loss, array responses, estimated channels and true-channel sampling
"""
from typing import Optional, Tuple
import logging
import math

import numpy as np

from robust_ris.exceptions import DomainError
from robust_ris.schemas.channel import ChannelEstimate, TrueChannelSample
from robust_ris.schemas.geometry import Geometry, Link, LoSAngles
from robust_ris.schemas.system import CsiErrorMode, SystemConfig
from robust_ris.utils.helpers import cscg, db_to_linear

logger = logging.getLogger(__name__)


def path_loss_db(
    distance_m: float,
    exponent: float,
    shadow_std_db: float,
    rng: np.random.Generator,
    pl0_db: float = 30.0,
) -> float:
    """Log-distance path loss with log-normal shadowing, in dB"""
    if distance_m < 1.0:
        raise DomainError(f"distance {distance_m} m is below the 1 m reference distance")
    shadow = rng.normal(0.0, shadow_std_db) if shadow_std_db > 0 else 0.0
    return pl0_db + 10.0 * exponent * math.log10(distance_m) + shadow


def link_gain(geometry: Geometry, link: Link, rng: np.random.Generator) -> float:
    """Linear power gain of one link, shadowing drawn afresh"""
    loss = path_loss_db(
        geometry.distance(link), geometry.exponent(link), geometry.shadow_std_db, rng, geometry.pl0_db
    )
    return db_to_linear(-loss)


def ula_steering(n: int, psi: float, spacing_ratio: float = 0.5) -> np.ndarray:
    """Unit-norm uniform linear array response"""
    k = np.arange(n)
    return np.exp(2j * np.pi * spacing_ratio * k * math.sin(psi)) / math.sqrt(n)


def upa_steering(psi: float, theta: float, m_x: int, m_y: int, spacing_ratio: float = 0.5) -> np.ndarray:
    """Unit-norm uniform planar array response, flattened row-major (p * m_y + q)"""
    p = np.arange(m_x)[:, None]
    q = np.arange(m_y)[None, :]
    phase = 2.0 * np.pi * spacing_ratio * (p * math.sin(psi) * math.sin(theta) + q * math.sin(theta))
    return (np.exp(1j * phase) / math.sqrt(m_x * m_y)).reshape(-1)


def los_gains(angles: LoSAngles) -> np.ndarray:
    """Per-element gains nu_m = nu_r conj(nu_i) conj(a_RD[m]) a_RA[m]"""
    a_ra = upa_steering(angles.psi_a, angles.theta_a, angles.m_x, angles.m_y, angles.spacing_ratio)
    a_rd = upa_steering(angles.psi_d, angles.theta_d, angles.m_x, angles.m_y, angles.spacing_ratio)
    return angles.nu_r * np.conj(angles.nu_i) * np.conj(a_rd) * a_ra


def los_compound_channels(cfg: SystemConfig, angles: LoSAngles) -> np.ndarray:
    """Rank-1 compound channels nu_m a_RX a_TX^H (M x N_R x N_T)"""
    if angles.n_ris != cfg.n_ris:
        raise DomainError(f"UPA holds {angles.n_ris} elements but the config has {cfg.n_ris}")
    a_rx = ula_steering(cfg.n_rx, angles.psi_rx, angles.spacing_ratio)
    a_tx = ula_steering(cfg.n_tx, angles.psi_tx, angles.spacing_ratio)
    outer = np.outer(a_rx, a_tx.conj())
    return los_gains(angles)[:, None, None] * outer[None, :, :]


def _direct_with_gain(cfg: SystemConfig, geometry: Geometry, rng: np.random.Generator) -> Tuple[np.ndarray, float]:
    gain = link_gain(geometry, Link.BS_USER, rng)
    return cscg(rng, (cfg.n_rx, cfg.n_tx), gain), gain


def gen_direct_estimate(cfg: SystemConfig, geometry: Geometry, rng: np.random.Generator) -> np.ndarray:
    """Rayleigh direct channel scaled by the BS-user path gain"""
    return _direct_with_gain(cfg, geometry, rng)[0]


def gen_compound_estimates(
    cfg: SystemConfig,
    geometry: Geometry,
    angles: LoSAngles,
    rng: np.random.Generator,
    rician_factor: Optional[float] = None,
) -> np.ndarray:
    """Rician compound channels scaled by the double path gain (M x N_R x N_T)"""
    kappa = geometry.rician_factor if rician_factor is None else rician_factor
    gain = link_gain(geometry, Link.BS_RIS, rng) * link_gain(geometry, Link.RIS_USER, rng)

    # LoS term normalized to unit average entry power, like the NLoS term
    los = los_compound_channels(cfg, angles) * math.sqrt(cfg.n_rx * cfg.n_tx) * cfg.n_ris
    nlos = cscg(rng, (cfg.n_ris, cfg.n_rx, cfg.n_tx), 1.0)
    if math.isinf(kappa):
        mix = los
    else:
        mix = math.sqrt(kappa / (1.0 + kappa)) * los + math.sqrt(1.0 / (1.0 + kappa)) * nlos
    return math.sqrt(gain) * mix


def gen_channel_estimate(
    cfg: SystemConfig,
    geometry: Geometry,
    rng: np.random.Generator,
    angles: Optional[LoSAngles] = None,
) -> ChannelEstimate:
    """Draw a full estimate with CSI-error variances resolved to absolute values"""
    if angles is None:
        angles = LoSAngles.random(cfg.n_ris, rng)
    h_d_bar, gain_bu = _direct_with_gain(cfg, geometry, rng)
    g_bars = gen_compound_estimates(cfg, geometry, angles, rng)

    if cfg.csi_error_mode == CsiErrorMode.RELATIVE:
        sigma_d_sq = cfg.sigma_d_sq * gain_bu
        sigma_m_sq = cfg.sigma_m_sq * float(np.mean(np.abs(g_bars) ** 2))
    else:
        sigma_d_sq, sigma_m_sq = cfg.sigma_d_sq, cfg.sigma_m_sq
    return ChannelEstimate(h_d_bar=h_d_bar, g_bars=g_bars, sigma_d_sq=sigma_d_sq, sigma_m_sq=sigma_m_sq)


def los_channel_estimate(cfg: SystemConfig, angles: LoSAngles) -> ChannelEstimate:
    """Pure-LoS estimate without a direct link; error variances taken from cfg as absolute"""
    g_bars = los_compound_channels(cfg, angles)
    return ChannelEstimate(
        h_d_bar=np.zeros((cfg.n_rx, cfg.n_tx), dtype=complex),
        g_bars=g_bars,
        sigma_d_sq=cfg.sigma_d_sq,
        sigma_m_sq=cfg.sigma_m_sq,
    )


def sample_true_channel(est: ChannelEstimate, cfg: SystemConfig, rng: np.random.Generator) -> TrueChannelSample:
    """Perturb the estimate by Gaussian CSI errors and draw uniform RIS phase noise"""
    h_d = est.h_d_bar + cscg(rng, est.h_d_bar.shape, est.sigma_d_sq)
    g_list = est.g_bars + cscg(rng, est.g_bars.shape, est.sigma_m_sq)
    half_width = np.pi / 2 ** cfg.bits
    phase_noise = rng.uniform(-half_width, half_width, size=est.n_ris)
    return TrueChannelSample(h_d=h_d, g_list=g_list, phase_noise=phase_noise)


def gen_iid_estimate(
    n_tx: int,
    n_rx: int,
    n_ris: int,
    rng: np.random.Generator,
    sigma_d_sq: float = 0.0,
    sigma_m_sq: float = 0.0,
    reflect_gain: float = 1.0,
) -> ChannelEstimate:
    """Unit-gain Rayleigh direct channel and i.i.d. compound channels of power reflect_gain"""
    return ChannelEstimate(
        h_d_bar=cscg(rng, (n_rx, n_tx), 1.0),
        g_bars=cscg(rng, (n_ris, n_rx, n_tx), reflect_gain),
        sigma_d_sq=sigma_d_sq,
        sigma_m_sq=sigma_m_sq,
    )
