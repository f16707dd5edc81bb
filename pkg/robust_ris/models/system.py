"""
System Model
Phase codebooks, distortion constants and configuration validation
"""
from functools import lru_cache
from typing import Any, Mapping, Union
import logging

import numpy as np
from pydantic import ValidationError

from robust_ris.exceptions import InvalidConfigError
from robust_ris.schemas.system import MAX_BITS, DistortionConstants, PhaseCodebook, SystemConfig

logger = logging.getLogger(__name__)


def _check_bits(bits: int) -> int:
    if isinstance(bits, bool) or int(bits) != bits or not 1 <= bits <= MAX_BITS:
        raise InvalidConfigError(f"bits must be an integer in [1, {MAX_BITS}], got {bits}")
    return int(bits)


@lru_cache(maxsize=None)
def phase_codebook(bits: int) -> PhaseCodebook:
    """Uniform 2^b-point phase grid starting at -pi"""
    bits = _check_bits(bits)
    levels = 2 ** bits
    phases = -np.pi + 2.0 * np.pi * np.arange(levels) / levels
    phases.setflags(write=False)
    return PhaseCodebook(bits=bits, phases=phases)


@lru_cache(maxsize=None)
def distortion_constants(bits: int) -> DistortionConstants:
    """Mean shrinkage omega_b and distortion level eps_b of uniform phase-quantization error"""
    bits = _check_bits(bits)
    # np.sinc(x) = sin(pi x) / (pi x), so this is (2^b / pi) sin(pi / 2^b)
    omega = float(np.sinc(1.0 / 2 ** bits))
    return DistortionConstants(eps_b=1.0 - omega ** 2, omega_b=omega)


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item.get("loc", ())) or "config"
        parts.append(f"{location}: {item.get('msg')}")
    return "; ".join(parts)


def validate_config(cfg: Union[SystemConfig, Mapping[str, Any]]) -> SystemConfig:
    """Return cfg when every invariant holds, otherwise raise InvalidConfigError"""
    data = cfg.model_dump() if isinstance(cfg, SystemConfig) else dict(cfg)
    try:
        checked = SystemConfig.model_validate(data)
    except ValidationError as e:
        message = _describe(e)
        logger.error(f"Invalid system config: {message}")
        raise InvalidConfigError(message) from e
    return cfg if isinstance(cfg, SystemConfig) else checked


def with_updates(cfg: SystemConfig, **changes: Any) -> SystemConfig:
    """Copy of cfg with fields replaced and invariants re-checked"""
    return validate_config({**cfg.model_dump(), **changes})
