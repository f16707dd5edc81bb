"""
RIS Phase Update (RGA)
Riemannian gradient ascent on the phase quadratic with codebook retraction
"""
from typing import Optional
import logging

import numpy as np

from robust_ris.exceptions import DegenerateDirectionError
from robust_ris.models.ris_mm import build_quadratic
from robust_ris.schemas.channel import ChannelEstimate
from robust_ris.schemas.solution import PhaseSearchResult, QuadraticSurrogate, RgaConfig
from robust_ris.schemas.system import DistortionConstants, PhaseCodebook, SystemConfig

logger = logging.getLogger(__name__)


def euclidean_gradient(theta: np.ndarray, q: QuadraticSurrogate) -> np.ndarray:
    return 2.0 * (q.xi_bar_2 - q.k_bar_2 - q.k_bar_3 @ theta)


def riemannian_gradient(theta_n: np.ndarray, q: QuadraticSurrogate) -> np.ndarray:
    """Euclidean gradient with its radial component removed"""
    euclid = euclidean_gradient(theta_n, q)
    return euclid - np.real(euclid * np.conj(theta_n)) * theta_n


def retract(theta_prime: np.ndarray, codebook: PhaseCodebook) -> np.ndarray:
    """Map each entry to the nearest codebook phase"""
    if np.any(theta_prime == 0):
        raise DegenerateDirectionError("cannot retract an entry of zero magnitude")
    return codebook.project(np.angle(theta_prime))


def _guarded_retract(theta_prime: np.ndarray, theta_n: np.ndarray, codebook: PhaseCodebook) -> np.ndarray:
    flat = theta_prime == 0
    if not np.any(flat):
        return retract(theta_prime, codebook)
    out = codebook.project(np.angle(np.where(flat, theta_n, theta_prime)))
    out[flat] = theta_n[flat]
    return out


def rga_optimize(
    w: np.ndarray,
    theta_0: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
    codebook: PhaseCodebook,
    rga: Optional[RgaConfig] = None,
    q: Optional[QuadraticSurrogate] = None,
) -> PhaseSearchResult:
    """Backtracking Riemannian ascent on the quadratic built at theta_0"""
    rga = rga or RgaConfig()
    q = q if q is not None else build_quadratic(w, theta_0, est, cfg, consts)
    theta = theta_0
    value = q.value(theta)
    trace = [value]

    if rga.rho_0 is not None:
        rho_0 = rga.rho_0
    elif q.lip > 0:
        rho_0 = 1.0 / q.lip
    else:
        return PhaseSearchResult(theta=theta, trace=trace, iterations=0)

    iterations = 0
    for iterations in range(1, rga.max_iter + 1):
        grad = riemannian_gradient(theta, q)
        if not np.any(np.abs(grad) > 0.0):
            break

        rho = rho_0
        candidate, candidate_value = theta, value
        for _ in range(rga.max_backtracks):
            trial = _guarded_retract(theta + rho * grad, theta, codebook)
            trial_value = q.value(trial)
            if trial_value >= value:
                candidate, candidate_value = trial, trial_value
                break
            rho *= rga.shrink

        improvement = candidate_value - value
        theta, value = candidate, candidate_value
        trace.append(value)
        if improvement < rga.tol * max(1.0, abs(value)):
            break

    logger.debug(f"RGA phase search: {iterations} iterations, surrogate {value:.6g}")
    return PhaseSearchResult(theta=theta, trace=trace, iterations=iterations)
