# Robust RIS Beamforming

from .scheme_service import SchemeService, run_scheme
from .sweep_service import SweepService, apply_sweep_value, run_sweep
from .analysis_service import AnalysisService
from .selftest_service import run_selftest

__all__ = [
    "SchemeService",
    "run_scheme",
    "SweepService",
    "apply_sweep_value",
    "run_sweep",
    "AnalysisService",
    "run_selftest",
]
