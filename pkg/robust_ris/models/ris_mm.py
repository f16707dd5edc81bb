"""
RIS Phase Update (MM)
Concatenated channel, reduced phase quadratic and the majorized codebook step
"""
from typing import Optional
import logging

import numpy as np
from scipy import linalg

from robust_ris.models.mse import g_mse, received_covariance
from robust_ris.schemas.channel import ChannelEstimate
from robust_ris.schemas.solution import ConcatenatedChannel, PhaseSearchResult, QuadraticSurrogate
from robust_ris.schemas.system import DistortionConstants, PhaseCodebook, SystemConfig
from robust_ris.utils.helpers import checked_cho_factor, diag_part, hermitize, largest_eigenvalue

logger = logging.getLogger(__name__)


def concatenated_channel(est: ChannelEstimate, consts: DistortionConstants) -> ConcatenatedChannel:
    """Blocks [H_d, omega_b G_1, ..., omega_b G_M]"""
    blocks = np.concatenate([est.h_d_bar[None], consts.omega_b * est.g_bars], axis=0)
    return ConcatenatedChannel(blocks=blocks)


def extended_phases(theta: np.ndarray) -> np.ndarray:
    """[1, theta_1, ..., theta_M]"""
    return np.concatenate([[1.0 + 0.0j], theta])


def _quadratic_factors(w, theta_t, est, cfg, consts):
    cov = received_covariance(w, theta_t, est, cfg, consts)
    factor = checked_cho_factor(cov.y_total)
    n_inv_m = linalg.cho_solve(factor, cov.h_bar_theta @ w, check_finite=False)
    a = n_inv_m @ n_inv_m.conj().T
    wwh = w @ w.conj().T
    b1 = wwh + cfg.beta_t ** 2 * diag_part(wwh)
    fixed = consts.eps_b * cov.t_com + cov.t_si
    const = -float(np.real(np.trace(a @ fixed)))
    return n_inv_m, a, wwh, b1, const


def build_quadratic(
    w: np.ndarray,
    theta_t: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
) -> QuadraticSurrogate:
    """Minorizer of g_MSE over the phases, tight at theta_t, in (M+1)-dimensional form"""
    n_inv_m, a, wwh, b1, const = _quadratic_factors(w, theta_t, est, cfg, consts)
    blocks = concatenated_channel(est, consts).blocks
    n_blocks = blocks.shape[0]

    xi = np.einsum("pij,ij->p", blocks.conj(), n_inv_m @ w.conj().T)

    # K[q, p] = Tr(H_q^H A H_p B1) + beta_r^2 Tr(H_q^H diag(A) H_p W W^H)
    a_diag = np.real(np.diag(a))
    right = a @ blocks @ b1 + cfg.beta_r ** 2 * (a_diag[:, None] * blocks) @ wwh
    k = hermitize(blocks.reshape(n_blocks, -1).conj() @ right.reshape(n_blocks, -1).T)

    const_term = 2.0 * float(np.real(xi[0])) - float(np.real(k[0, 0])) + const
    lip = max(largest_eigenvalue(k[1:, 1:]), 0.0)
    return QuadraticSurrogate(xi_bar=xi, k_bar=k, lip=lip, const_term=const_term)


def kronecker_reference(
    w: np.ndarray,
    theta_t: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
) -> QuadraticSurrogate:
    """Same surrogate built from the full Kronecker-structured objects; for small instances only"""
    n_inv_m, a, wwh, b1, const = _quadratic_factors(w, theta_t, est, cfg, consts)
    h_cat = concatenated_channel(est, consts).h_cat
    n_tx = est.n_tx
    n_blocks = est.n_ris + 1

    # column-major vec
    xi_full = (h_cat.conj().T @ n_inv_m @ w.conj().T).reshape(-1, order="F")
    k_full = np.kron(b1.T, h_cat.conj().T @ a @ h_cat) + np.kron(
        wwh.T, cfg.beta_r ** 2 * h_cat.conj().T @ diag_part(a) @ h_cat
    )

    # vec(theta_ext kron I) = selection @ theta_ext
    selection = np.zeros((n_blocks * n_tx * n_tx, n_blocks), dtype=complex)
    for p in range(n_blocks):
        e_p = np.zeros(n_blocks)
        e_p[p] = 1.0
        selection[:, p] = np.kron(e_p[:, None], np.eye(n_tx)).reshape(-1, order="F")

    xi = selection.conj().T @ xi_full
    k = hermitize(selection.conj().T @ k_full @ selection)
    const_term = 2.0 * float(np.real(xi[0])) - float(np.real(k[0, 0])) + const
    lip = max(float(linalg.eigvalsh(k[1:, 1:])[-1]), 0.0)
    return QuadraticSurrogate(xi_bar=xi, k_bar=k, lip=lip, const_term=const_term)


def majorizer_vector(theta_t: np.ndarray, q: QuadraticSurrogate) -> np.ndarray:
    """lip theta_t - K3 theta_t + xi_2 - k_2"""
    return q.lip * theta_t - q.k_bar_3 @ theta_t + q.xi_bar_2 - q.k_bar_2


def majorized_value(theta: np.ndarray, theta_t: np.ndarray, q: QuadraticSurrogate) -> float:
    """Linear minorizer of the quadratic on the unit-modulus set, tight at theta_t"""
    b = majorizer_vector(theta_t, q)
    n = theta.shape[0]
    tail = np.real(np.vdot(theta_t, q.k_bar_3 @ theta_t)) - 2.0 * q.lip * n
    return float(2.0 * np.real(np.vdot(theta, b)) + tail + q.const_term)


def mm_phase_step(theta_t: np.ndarray, q: QuadraticSurrogate, codebook: PhaseCodebook) -> np.ndarray:
    """Maximize the linear minorizer element-wise over the codebook"""
    b = majorizer_vector(theta_t, q)
    theta = codebook.project(np.angle(b))
    # entries with no pull keep their phase
    flat = np.abs(b) == 0.0
    theta[flat] = theta_t[flat]
    return theta


def mm_phase_optimize(
    w: np.ndarray,
    theta_0: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
    codebook: PhaseCodebook,
    tol: float = 1e-6,
    max_iter: int = 50,
    refresh_quadratic: bool = True,
    q: Optional[QuadraticSurrogate] = None,
) -> PhaseSearchResult:
    """Repeated majorized steps until the surrogate stops improving

    With refresh_quadratic the quadratic is rebuilt at every iterate, so the
    trace equals g_MSE; otherwise the quadratic built at theta_0 is held fixed.
    """
    theta = theta_0
    q = q if q is not None else build_quadratic(w, theta, est, cfg, consts)
    value = g_mse(w, theta, est, cfg, consts) if refresh_quadratic else q.value(theta)
    trace = [value]
    iterations = 0

    for iterations in range(1, max_iter + 1):
        candidate = mm_phase_step(theta, q, codebook)
        if np.array_equal(candidate, theta):
            break
        if refresh_quadratic:
            q_next = build_quadratic(w, candidate, est, cfg, consts)
            new_value = q_next.value(candidate)
        else:
            q_next = q
            new_value = q.value(candidate)
        if new_value < value:
            # roundoff only; the step is an ascent step
            break
        theta, q = candidate, q_next
        trace.append(new_value)
        improvement = new_value - value
        value = new_value
        if improvement < tol * max(1.0, abs(value)):
            break

    logger.debug(f"MM phase search: {iterations} iterations, objective {value:.6g}")
    return PhaseSearchResult(theta=theta, trace=trace, iterations=iterations)
