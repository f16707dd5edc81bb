"""
Test Factories
Small unit-gain instances shared across the test modules
"""
from typing import Optional

import numpy as np

from robust_ris.models.channels import gen_iid_estimate
from robust_ris.models.solver import svd_precoder
from robust_ris.models.system import distortion_constants, phase_codebook
from robust_ris.schemas.channel import ChannelEstimate
from robust_ris.schemas.system import SystemConfig
from robust_ris.utils.helpers import trial_rng


def make_config(**overrides) -> SystemConfig:
    fields = {
        "n_tx": 2,
        "n_rx": 2,
        "n_streams": 2,
        "n_ris": 4,
        "bits": 2,
        "power": 1.0,
        "noise_var": 0.1,
        "beta_t": 0.08,
        "beta_r": 0.08,
        "sigma_d_sq": 0.01,
        "sigma_m_sq": 0.01,
        "csi_error_mode": "absolute",
    }
    fields.update(overrides)
    return SystemConfig(**fields)


def make_estimate(
    cfg: SystemConfig, rng: np.random.Generator, reflect_gain: float = 1.0
) -> ChannelEstimate:
    return gen_iid_estimate(
        cfg.n_tx, cfg.n_rx, cfg.n_ris, rng, cfg.sigma_d_sq, cfg.sigma_m_sq, reflect_gain
    )


def make_instance(seed: int, cfg: Optional[SystemConfig] = None):
    """(cfg, est, consts, theta, w) with random codebook phases and an SVD precoder"""
    cfg = cfg or make_config()
    rng = trial_rng(seed)
    est = make_estimate(cfg, rng)
    consts = distortion_constants(cfg.bits)
    theta = phase_codebook(cfg.bits).random(cfg.n_ris, rng)
    w = svd_precoder(est.h_d_bar, cfg)
    return cfg, est, consts, theta, w
