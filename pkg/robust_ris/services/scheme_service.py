"""
Scheme Service
Runs one beamforming scheme on one channel estimate
"""
from typing import Optional
import logging

import numpy as np

from robust_ris.models.mse import effective_channel
from robust_ris.models.solver import ao_solve, evaluate_solution, scale_to_power, svd_precoder
from robust_ris.models.system import distortion_constants, phase_codebook
from robust_ris.schemas.bench import Scheme
from robust_ris.schemas.channel import ChannelEstimate
from robust_ris.schemas.solution import BeamformingSolution, RisMethod, SolverOptions
from robust_ris.schemas.system import DistortionConstants, SystemConfig

logger = logging.getLogger(__name__)

CONTINUOUS_BITS = 14


class SchemeService:
    """Designs and evaluates the compared beamforming schemes"""

    def __init__(self, options: Optional[SolverOptions] = None):
        self.options = options or SolverOptions()

    def run(
        self,
        scheme: Scheme,
        est: ChannelEstimate,
        cfg: SystemConfig,
        consts: DistortionConstants,
        rng: np.random.Generator,
    ) -> BeamformingSolution:
        """Solve one scheme and evaluate it in the world it is defined for"""
        scheme = Scheme(scheme)
        try:
            if scheme == Scheme.AO_MM:
                return self._ao(est, cfg, consts, RisMethod.MM)
            if scheme == Scheme.AO_RGA:
                return self._ao(est, cfg, consts, RisMethod.RGA)
            if scheme == Scheme.PERFECT_HARDWARE:
                ideal_cfg = cfg.model_copy(
                    update={"beta_t": 0.0, "beta_r": 0.0, "bits": CONTINUOUS_BITS}
                )
                return self._ao(est, ideal_cfg, distortion_constants(CONTINUOUS_BITS), self.options.ris_method)
            if scheme == Scheme.PERFECT_CSI:
                return self._ao(est.without_errors(), cfg, consts, self.options.ris_method)
            if scheme == Scheme.RANDOM_PHASE:
                theta = phase_codebook(cfg.bits).random(est.n_ris, rng)
                return self._fixed_phases(est, cfg, consts, theta)
            if scheme == Scheme.IDENTITY_PHASE:
                theta = phase_codebook(cfg.bits).identity(est.n_ris)
                return self._fixed_phases(est, cfg, consts, theta)
            if scheme == Scheme.NONROBUST:
                return self._nonrobust(est, cfg, consts)
            raise ValueError(f"unknown scheme {scheme}")
        except Exception as e:
            logger.error(f"Error running scheme {scheme.value}: {e}")
            raise

    def _ao(self, est, cfg, consts, ris_method) -> BeamformingSolution:
        return ao_solve(
            est, cfg, consts,
            ris_method=ris_method,
            options=self.options,
        )

    def _fixed_phases(self, est, cfg, consts, theta) -> BeamformingSolution:
        w_0 = svd_precoder(effective_channel(est, theta, consts), cfg)
        return ao_solve(
            est, cfg, consts,
            init=(w_0, theta),
            optimize_phases=False,
            options=self.options,
        )

    def _nonrobust(self, est, cfg, consts) -> BeamformingSolution:
        design_cfg = cfg.model_copy(update={"beta_t": 0.0, "beta_r": 0.0, "bits": CONTINUOUS_BITS})
        design = self._ao(
            est.without_errors(), design_cfg, distortion_constants(CONTINUOUS_BITS), self.options.ris_method
        )
        theta = phase_codebook(cfg.bits).project(np.angle(design.theta))
        w = scale_to_power(design.w, cfg)
        return evaluate_solution(
            w, theta, est, cfg, consts,
            trace=design.trace,
            iterations=design.iterations,
            converged=design.converged,
            ris_method=design.ris_method,
        )


def run_scheme(
    scheme: Scheme,
    est: ChannelEstimate,
    cfg: SystemConfig,
    consts: DistortionConstants,
    rng: np.random.Generator,
    options: Optional[SolverOptions] = None,
) -> BeamformingSolution:
    """Functional entry point for SchemeService.run"""
    return SchemeService(options).run(scheme, est, cfg, consts, rng)
