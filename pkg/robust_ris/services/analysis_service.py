"""
Analysis Service
Evaluates the closed-form bounds and floors for one drawn instance
"""
import logging

from robust_ris.exceptions import RankError
from robust_ris.models.analysis import (
    floor_csi,
    floor_hwi,
    floor_phase_noise,
    los_optimal,
    miso_floor,
    miso_lower_bound,
)
from robust_ris.models.channels import gen_channel_estimate
from robust_ris.models.system import distortion_constants, phase_codebook
from robust_ris.schemas.analysis import AnalysisReport
from robust_ris.schemas.geometry import Geometry, LoSAngles
from robust_ris.schemas.system import SystemConfig
from robust_ris.utils.helpers import trial_rng

logger = logging.getLogger(__name__)


class AnalysisService:
    """Bounds and floors for a configuration"""

    def analyze(self, cfg: SystemConfig, geometry: Geometry, seed: int = 0) -> AnalysisReport:
        """Draw one instance and evaluate every result that applies to its dimensions"""
        try:
            rng = trial_rng(seed)
            consts = distortion_constants(cfg.bits)
            codebook = phase_codebook(cfg.bits)
            report = {
                "n_tx": cfg.n_tx,
                "n_rx": cfg.n_rx,
                "n_ris": cfg.n_ris,
                "bits": cfg.bits,
                "floor_hwi": floor_hwi(cfg.n_tx, cfg.beta_t, cfg.beta_r),
            }

            est = gen_channel_estimate(cfg, geometry, rng)
            if cfg.n_rx == 1:
                theta = codebook.identity(cfg.n_ris)
                report["miso_lower_bound"] = miso_lower_bound(est, cfg, consts)
                report["miso_floor"] = miso_floor(est, cfg, consts)
                report["floor_csi"] = floor_csi(
                    est, theta, est.sigma_d_sq, est.n_ris * est.sigma_m_sq
                )
                try:
                    report["floor_phase_noise"] = floor_phase_noise(est, theta, cfg.bits)
                except RankError as e:
                    logger.info(f"Phase-noise floor undefined for this instance: {e}")

            if cfg.n_streams == 1:
                angles = LoSAngles.random(cfg.n_ris, rng)
                _, _, g_star = los_optimal(cfg, angles, consts, codebook)
                report["los_g_star"] = g_star
                report["los_anmse"] = 1.0 - g_star

            return AnalysisReport(**report)

        except Exception as e:
            logger.error(f"Error in analysis: {e}")
            raise
