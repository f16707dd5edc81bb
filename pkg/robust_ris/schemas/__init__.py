# Robust RIS Beamforming

from .system import SystemConfig, PhaseCodebook, DistortionConstants, CsiErrorMode
from .geometry import Geometry, LoSAngles, Link
from .channel import ChannelEstimate, TrueChannelSample
from .solution import (
    BeamformingSolution,
    ConcatenatedChannel,
    CovarianceBundle,
    PhaseSearchResult,
    PrecoderSurrogate,
    QuadraticSurrogate,
    RgaConfig,
    RisMethod,
    SolverOptions,
)
from .analysis import AnalysisReport, LosCoefficients, MisoBoundInputs
from .bench import Scheme, SweepReport, SweepRow, SweepSpec, SweepVariable, TrialOutcome

__all__ = [
    "SystemConfig",
    "PhaseCodebook",
    "DistortionConstants",
    "CsiErrorMode",
    "Geometry",
    "LoSAngles",
    "Link",
    "ChannelEstimate",
    "TrueChannelSample",
    "BeamformingSolution",
    "ConcatenatedChannel",
    "CovarianceBundle",
    "PhaseSearchResult",
    "PrecoderSurrogate",
    "QuadraticSurrogate",
    "RgaConfig",
    "RisMethod",
    "SolverOptions",
    "AnalysisReport",
    "LosCoefficients",
    "MisoBoundInputs",
    "Scheme",
    "SweepReport",
    "SweepRow",
    "SweepSpec",
    "SweepVariable",
    "TrialOutcome",
]
