# Robust RIS Beamforming

from .system import distortion_constants, phase_codebook, validate_config, with_updates
from .channels import gen_channel_estimate, gen_iid_estimate, los_channel_estimate, sample_true_channel
from .mse import g_mse, mc_average_mse, received_covariance, total_average_mse, wiener_equalizer
from .precoder_opt import build_surrogate, optimal_precoder, solve_lambda
from .ris_mm import build_quadratic, mm_phase_optimize
from .ris_rga import rga_optimize
from .solver import ao_solve, ideal_init
from .analysis import floor_csi, floor_hwi, floor_phase_noise, los_optimal, miso_floor, miso_lower_bound

__all__ = [
    "distortion_constants",
    "phase_codebook",
    "validate_config",
    "with_updates",
    "gen_channel_estimate",
    "gen_iid_estimate",
    "los_channel_estimate",
    "sample_true_channel",
    "g_mse",
    "mc_average_mse",
    "received_covariance",
    "total_average_mse",
    "wiener_equalizer",
    "build_surrogate",
    "optimal_precoder",
    "solve_lambda",
    "build_quadratic",
    "mm_phase_optimize",
    "rga_optimize",
    "ao_solve",
    "ideal_init",
    "floor_csi",
    "floor_hwi",
    "floor_phase_noise",
    "los_optimal",
    "miso_floor",
    "miso_lower_bound",
]
