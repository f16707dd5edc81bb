"""
Precoder Update
MM surrogate of g_MSE in the precoder, closed-form maximizer and multiplier search
"""
from typing import Tuple
import logging

import numpy as np
from scipy import linalg

from robust_ris.exceptions import BracketNotFoundError, SingularSurrogateError
from robust_ris.models.mse import received_covariance
from robust_ris.schemas.channel import ChannelEstimate
from robust_ris.schemas.solution import PrecoderSurrogate
from robust_ris.schemas.system import DistortionConstants, SystemConfig
from robust_ris.utils.helpers import (
    CONDITION_LIMIT,
    checked_cho_factor,
    diag_part,
    frobenius_power,
    hermitian_condition,
    hermitize,
)

logger = logging.getLogger(__name__)

MAX_DOUBLINGS = 60
MAX_BISECTIONS = 200
POWER_RTOL = 1e-12


def build_surrogate(
    w_t: np.ndarray,
    theta: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
) -> PrecoderSurrogate:
    """Locally tight quadratic lower bound of g_MSE around w_t"""
    bt2, br2 = cfg.beta_t ** 2, cfg.beta_r ** 2
    cov = received_covariance(w_t, theta, est, cfg, consts)
    h = cov.h_bar_theta
    factor = checked_cho_factor(cov.y_total)
    y_inv_x = linalg.cho_solve(factor, h @ w_t, check_finite=False)
    w_hat = y_inv_x.conj().T
    s = w_hat.conj().T @ w_hat
    s_diag = diag_part(s)

    cas = h.conj().T @ s @ h
    z_cas = cas + bt2 * diag_part(cas) + br2 * (h.conj().T @ s_diag @ h)

    g_h = np.swapaxes(est.g_bars, -1, -2).conj()
    com = np.einsum("mij,jk,mkl->il", g_h, s, est.g_bars)
    com_rx = np.einsum("mij,jk,mkl->il", g_h, s_diag, est.g_bars)
    z_com = com + bt2 * diag_part(com) + br2 * com_rx

    s_trace = float(np.real(np.trace(s)))
    z_si = (1.0 + bt2 + br2) * est.total_error_variance * s_trace * np.eye(est.n_tx)

    z = hermitize(z_cas + consts.eps_b * z_com + z_si)
    rhs = h.conj().T @ y_inv_x
    const_term = -(1.0 + br2) * cfg.noise_var * s_trace
    return PrecoderSurrogate(w_hat=w_hat, z=z, rhs=rhs, const_term=const_term)


def surrogate_value(s: PrecoderSurrogate, w: np.ndarray) -> float:
    """2 Re Tr(W_hat H W) - Tr(Z W W^H) + const"""
    lin = 2.0 * np.real(np.vdot(s.rhs, w))
    quad = np.real(np.vdot(w, s.z @ w))
    return float(lin - quad + s.const_term)


def optimal_precoder(s: PrecoderSurrogate, lam: float) -> np.ndarray:
    """Maximizer (Z + lambda I)^-1 rhs of the penalized surrogate"""
    m = s.z + lam * np.eye(s.z.shape[0])
    if hermitian_condition(m) > CONDITION_LIMIT:
        raise SingularSurrogateError(f"Z + {lam:g} I is singular")
    try:
        factor = linalg.cho_factor(m, lower=True, check_finite=False)
    except linalg.LinAlgError as e:
        raise SingularSurrogateError(f"Z + {lam:g} I is not positive definite") from e
    return linalg.cho_solve(factor, s.rhs, check_finite=False)


def precoder_power_evd(s: PrecoderSurrogate, lam: float) -> float:
    """Tr(W W^H) of the optimal precoder at lambda via the eigendecomposition of Z"""
    eigvals, eigvecs = linalg.eigh(s.z)
    projected = eigvecs.conj().T @ s.rhs
    weights = np.sum(np.abs(projected) ** 2, axis=1)
    return float(np.sum(weights / (eigvals + lam) ** 2))


def solve_lambda(s: PrecoderSurrogate, cfg: SystemConfig) -> Tuple[float, np.ndarray]:
    """Smallest multiplier whose precoder meets the distortion-inflated power budget"""
    target = cfg.power_target

    try:
        w0 = optimal_precoder(s, 0.0)
        if frobenius_power(w0) <= target:
            return 0.0, w0
    except SingularSurrogateError:
        logger.debug("Surrogate singular at lambda=0, searching lambda > 0")

    lo, hi = 0.0, 1.0
    for _ in range(MAX_DOUBLINGS):
        w_hi = optimal_precoder(s, hi)
        p_hi = frobenius_power(w_hi)
        if p_hi <= target:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise BracketNotFoundError(f"no feasible multiplier below {hi:g}")

    # hi always stays feasible
    for _ in range(MAX_BISECTIONS):
        if abs(p_hi - target) <= POWER_RTOL * target or hi - lo <= 1e-15 * hi:
            break
        mid = 0.5 * (lo + hi)
        try:
            w_mid = optimal_precoder(s, mid)
        except SingularSurrogateError:
            lo = mid
            continue
        p_mid = frobenius_power(w_mid)
        if p_mid > target:
            lo = mid
        else:
            hi, w_hi, p_hi = mid, w_mid, p_mid
    return hi, w_hi
