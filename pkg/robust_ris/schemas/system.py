"""
System Schemas
Scalar link parameters, phase codebooks and distortion constants
"""
from enum import Enum

import numpy as np
from pydantic import BaseModel, Field, model_validator

from robust_ris.utils.helpers import dbm_to_watts, watts_to_dbm, wrap_phase

MAX_BITS = 16


class CsiErrorMode(str, Enum):
    """How configured CSI-error variances are interpreted"""
    RELATIVE = "relative"
    ABSOLUTE = "absolute"


class SystemConfig(BaseModel):
    """Scalar parameters of the RIS-aided MIMO link"""
    n_tx: int = Field(..., ge=1, description="BS antennas N_T")
    n_rx: int = Field(..., ge=1, description="User antennas N_R")
    n_streams: int = Field(..., ge=1, description="Data streams d")
    n_ris: int = Field(..., ge=1, description="RIS elements M")
    bits: int = Field(..., ge=1, le=MAX_BITS, description="Phase quantization bits b")
    power: float = Field(..., gt=0, description="Transmit power budget P in watts")
    noise_var: float = Field(..., gt=0, description="Receiver noise variance in watts")
    beta_t: float = Field(0.0, ge=0, le=1, description="Transmitter distortion level")
    beta_r: float = Field(0.0, ge=0, le=1, description="Receiver distortion level")
    sigma_d_sq: float = Field(0.0, ge=0, description="Direct-channel CSI error variance")
    sigma_m_sq: float = Field(0.0, ge=0, description="Per-compound-channel CSI error variance")
    csi_error_mode: CsiErrorMode = Field(
        CsiErrorMode.RELATIVE,
        description="relative: variances scale with the link path gain; absolute: used as given",
    )

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "n_tx": 8,
                "n_rx": 8,
                "n_streams": 8,
                "n_ris": 64,
                "bits": 2,
                "power": 0.1,
                "noise_var": 1e-13,
                "beta_t": 0.08,
                "beta_r": 0.08,
                "sigma_d_sq": 0.01,
                "sigma_m_sq": 0.01,
                "csi_error_mode": "relative",
            }
        }

    @model_validator(mode="after")
    def _check_streams(self) -> "SystemConfig":
        limit = min(self.n_tx, self.n_rx)
        if self.n_streams > limit:
            raise ValueError(f"n_streams ({self.n_streams}) > min(n_tx, n_rx) ({limit})")
        return self

    @classmethod
    def from_dbm(cls, power_dbm: float, noise_dbm: float, **kwargs) -> "SystemConfig":
        """Build a config from dBm power levels"""
        return cls(power=dbm_to_watts(power_dbm), noise_var=dbm_to_watts(noise_dbm), **kwargs)

    @property
    def power_dbm(self) -> float:
        return watts_to_dbm(self.power)

    @property
    def snr(self) -> float:
        """Transmit SNR P / sigma^2"""
        return self.power / self.noise_var

    @property
    def power_target(self) -> float:
        """Largest admissible Tr(W W^H) under the distortion-inflated budget"""
        return self.power / (1.0 + self.beta_t ** 2)


class PhaseCodebook(BaseModel):
    """Discrete set of RIS phase shifts for a b-bit element"""
    bits: int = Field(..., ge=1, le=MAX_BITS)
    phases: np.ndarray = Field(..., description="Ascending phases on [-pi, pi)")

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def size(self) -> int:
        return int(self.phases.shape[0])

    def nearest_index(self, angles: np.ndarray) -> np.ndarray:
        """Index of the codebook phase closest in circular distance; ties go to the smaller phase"""
        angles = np.asarray(angles, dtype=float)
        distance = np.abs(wrap_phase(angles[..., None] - self.phases))
        return np.argmin(distance, axis=-1)

    def project(self, angles: np.ndarray) -> np.ndarray:
        """Unit-modulus vector whose phases are the nearest codebook members"""
        return np.exp(1j * self.phases[self.nearest_index(angles)])

    def contains(self, theta: np.ndarray, atol: float = 1e-9) -> bool:
        """Whether every entry is a unit-modulus codebook member"""
        theta = np.asarray(theta)
        if not np.allclose(np.abs(theta), 1.0, atol=atol):
            return False
        return bool(np.allclose(self.project(np.angle(theta)), theta, atol=atol))

    def identity(self, n: int) -> np.ndarray:
        """All-ones phase vector (0 is a member of every codebook)"""
        return self.project(np.zeros(n))

    def random(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Uniformly drawn codebook vector"""
        return np.exp(1j * self.phases[rng.integers(0, self.size, size=n)])


class DistortionConstants(BaseModel):
    """Mean shrinkage and phase distortion level of a quantized RIS"""
    eps_b: float = Field(..., ge=0, lt=1, description="Average phase distortion level")
    omega_b: float = Field(..., gt=0, le=1, description="Shrinkage of the mean reflection")

    class Config:
        frozen = True
