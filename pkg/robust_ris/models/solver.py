"""
Alternating Optimization
Outer loop over the precoder and RIS phases with ideal-system initialization
"""
from typing import List, Optional, Tuple
import logging
import math

import numpy as np

from robust_ris.models.mse import effective_channel, g_mse, wiener_equalizer
from robust_ris.models.precoder_opt import build_surrogate, solve_lambda
from robust_ris.models.ris_mm import mm_phase_optimize
from robust_ris.models.ris_rga import rga_optimize
from robust_ris.models.system import distortion_constants, phase_codebook
from robust_ris.schemas.channel import ChannelEstimate
from robust_ris.schemas.solution import BeamformingSolution, RisMethod, SolverOptions
from robust_ris.schemas.system import DistortionConstants, SystemConfig
from robust_ris.utils.helpers import cscg, frobenius_power

logger = logging.getLogger(__name__)


def scale_to_power(w: np.ndarray, cfg: SystemConfig) -> np.ndarray:
    """Shrink W onto the distortion-inflated power budget if it exceeds it"""
    used = frobenius_power(w)
    if used > cfg.power_target:
        return w * math.sqrt(cfg.power_target / used)
    return w


def svd_precoder(h: np.ndarray, cfg: SystemConfig) -> np.ndarray:
    """Equal-power precoder on the d strongest right singular vectors of h"""
    _, _, vh = np.linalg.svd(h)
    v = vh.conj().T[:, : cfg.n_streams]
    return v * math.sqrt(cfg.power_target / cfg.n_streams)


def random_init(
    est: ChannelEstimate, cfg: SystemConfig, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """Random codebook phases and a random full-power precoder"""
    theta = phase_codebook(cfg.bits).random(est.n_ris, rng)
    w = cscg(rng, (est.n_tx, cfg.n_streams), 1.0)
    return w * math.sqrt(cfg.power_target / frobenius_power(w)), theta


def evaluate_solution(
    w: np.ndarray,
    theta: np.ndarray,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
    trace: Optional[List[float]] = None,
    iterations: int = 0,
    converged: bool = False,
    ris_method: RisMethod = RisMethod.MM,
) -> BeamformingSolution:
    """Package (W, theta) with its Wiener equalizer and objective under (est, cfg)"""
    objective = g_mse(w, theta, est, cfg, consts)
    return BeamformingSolution(
        w=w,
        theta=theta,
        c=wiener_equalizer(w, theta, est, cfg, consts),
        objective=objective,
        anmse=(cfg.n_streams - objective) / cfg.n_streams,
        trace=list(trace or [objective]),
        iterations=iterations,
        converged=converged,
        ris_method=ris_method,
    )


def ideal_init(
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
    ris_method: RisMethod = RisMethod.MM,
    options: Optional[SolverOptions] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Solve the impairment-free problem and rescale its precoder for the real budget"""
    options = options or SolverOptions()
    ideal_cfg = cfg.model_copy(update={"beta_t": 0.0, "beta_r": 0.0})
    ideal_est = est.without_errors()
    theta_0 = phase_codebook(cfg.bits).identity(est.n_ris)
    w_0 = svd_precoder(effective_channel(ideal_est, theta_0, consts), ideal_cfg)
    solution = ao_solve(
        ideal_est,
        ideal_cfg,
        consts,
        ris_method=ris_method,
        tol=options.tol,
        max_outer=options.ideal_init_iterations,
        init=(w_0, theta_0),
        options=options,
    )
    return scale_to_power(solution.w, cfg), solution.theta


def ao_solve(
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: Optional[DistortionConstants] = None,
    ris_method: RisMethod = RisMethod.MM,
    tol: Optional[float] = None,
    max_outer: Optional[int] = None,
    init: Optional[Tuple[np.ndarray, np.ndarray]] = None,
    optimize_phases: bool = True,
    options: Optional[SolverOptions] = None,
) -> BeamformingSolution:
    """Alternate precoder and phase updates until g_MSE stops improving"""
    consts = consts or distortion_constants(cfg.bits)
    options = options or SolverOptions()
    ris_method = RisMethod(ris_method)
    tol = options.tol if tol is None else tol
    max_outer = options.max_outer if max_outer is None else max_outer
    codebook = phase_codebook(cfg.bits)

    try:
        if init is None:
            w, theta = ideal_init(est, cfg, consts, ris_method, options)
        else:
            w, theta = init

        value = g_mse(w, theta, est, cfg, consts)
        trace = [value]
        converged = False
        iterations = 0

        for iterations in range(1, max_outer + 1):
            previous = value

            surrogate = build_surrogate(w, theta, est, cfg, consts)
            _, w_next = solve_lambda(surrogate, cfg)
            w_value = g_mse(w_next, theta, est, cfg, consts)
            if w_value >= value:
                w, value = w_next, w_value

            if optimize_phases:
                if ris_method == RisMethod.MM:
                    search = mm_phase_optimize(
                        w, theta, est, cfg, consts, codebook,
                        tol=options.mm_tol,
                        max_iter=options.mm_max_iter,
                        refresh_quadratic=options.mm_refresh_quadratic,
                    )
                else:
                    search = rga_optimize(w, theta, est, cfg, consts, codebook, options.rga)
                theta_value = g_mse(w, search.theta, est, cfg, consts)
                if theta_value >= value:
                    theta, value = search.theta, theta_value

            trace.append(value)
            if abs(value - previous) < tol:
                converged = True
                break

        logger.debug(
            f"AO ({ris_method.value}) finished after {iterations} iterations, g_MSE={value:.6g}"
        )
        return evaluate_solution(
            w, theta, est, cfg, consts,
            trace=trace,
            iterations=iterations,
            converged=converged,
            ris_method=ris_method,
        )

    except Exception as e:
        logger.error(f"Error in alternating optimization: {e}")
        raise
