"""
Solution Schemas
Intermediate surrogates and beamforming results
"""
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field


class RisMethod(str, Enum):
    """Phase update used inside the alternating optimization"""
    MM = "mm"
    RGA = "rga"


class CovarianceBundle(BaseModel):
    """Received-signal covariance terms for a given precoder and phase vector"""
    h_bar_theta: np.ndarray = Field(..., description="Mean cascaded channel")
    t_cas: np.ndarray = Field(..., description="Cascaded-channel covariance")
    t_com: np.ndarray = Field(..., description="Compound-channel covariance")
    t_si: np.ndarray = Field(..., description="Noise and CSI-error covariance")
    y_total: np.ndarray = Field(..., description="t_cas + eps_b * t_com + t_si")

    class Config:
        frozen = True
        arbitrary_types_allowed = True


class PrecoderSurrogate(BaseModel):
    """Quadratic minorizer of g_MSE in the precoder around W_t"""
    w_hat: np.ndarray = Field(..., description="X^H Y^-1 at W_t (d x N_R)")
    z: np.ndarray = Field(..., description="Hermitian PSD curvature (N_T x N_T)")
    rhs: np.ndarray = Field(..., description="Linear term H^H Y^-1 X (N_T x d)")
    const_term: float = Field(..., description="Precoder-independent offset")

    class Config:
        frozen = True
        arbitrary_types_allowed = True


class ConcatenatedChannel(BaseModel):
    """Direct channel followed by the shrunk compound channels, side by side"""
    blocks: np.ndarray = Field(..., description="(M+1) x N_R x N_T stacked blocks")

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def h_cat(self) -> np.ndarray:
        """N_R x (M+1) N_T concatenation"""
        return np.concatenate(list(self.blocks), axis=1)


class QuadraticSurrogate(BaseModel):
    """Minorizer of g_MSE in the extended phase vector around theta_t"""
    xi_bar: np.ndarray = Field(..., description="Linear coefficients over [1, theta]")
    k_bar: np.ndarray = Field(..., description="Hermitian PSD quadratic coefficients")
    lip: float = Field(..., ge=0, description="Largest eigenvalue of the theta-theta block")
    const_term: float = Field(..., description="Phase-independent offset")

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def xi_bar_2(self) -> np.ndarray:
        return self.xi_bar[1:]

    @property
    def k_bar_2(self) -> np.ndarray:
        return self.k_bar[1:, 0]

    @property
    def k_bar_3(self) -> np.ndarray:
        return self.k_bar[1:, 1:]

    def value(self, theta: np.ndarray) -> float:
        """Surrogate value at a phase vector"""
        lin = 2.0 * np.real(np.vdot(theta, self.xi_bar_2 - self.k_bar_2))
        quad = np.real(np.vdot(theta, self.k_bar_3 @ theta))
        return float(lin - quad + self.const_term)


class RgaConfig(BaseModel):
    """Step-size and stopping parameters of the Riemannian ascent"""
    rho_0: Optional[float] = Field(None, gt=0, description="Initial step; None uses 1/lip")
    shrink: float = Field(0.5, gt=0, lt=1, description="Backtracking factor")
    tol: float = Field(1e-6, gt=0, description="Stop when the surrogate gain falls below this")
    max_iter: int = Field(100, ge=1)
    max_backtracks: int = Field(30, ge=1)

    class Config:
        frozen = True


class PhaseSearchResult(BaseModel):
    """Outcome of an inner phase-vector search"""
    theta: np.ndarray = Field(..., description="Final codebook phase vector")
    trace: List[float] = Field(default_factory=list, description="Objective after each iteration")
    iterations: int = Field(0, ge=0)

    class Config:
        frozen = True
        arbitrary_types_allowed = True


class SolverOptions(BaseModel):
    """Tuning of the alternating optimization"""
    ris_method: RisMethod = Field(RisMethod.MM, description="Phase update method")
    tol: float = Field(1e-4, gt=0, description="Absolute g_MSE change that ends the outer loop")
    max_outer: int = Field(100, ge=1)
    mm_tol: float = Field(1e-6, gt=0, description="Relative tolerance of the MM inner loop")
    mm_max_iter: int = Field(50, ge=1)
    mm_refresh_quadratic: bool = Field(
        True, description="Rebuild the phase quadratic at each inner MM iterate"
    )
    ideal_init_iterations: int = Field(30, ge=1)
    rga: RgaConfig = Field(default_factory=RgaConfig)

    class Config:
        frozen = True


class BeamformingSolution(BaseModel):
    """Precoder, phase vector and equalizer returned by a solve"""
    w: np.ndarray = Field(..., description="Precoder (N_T x d)")
    theta: np.ndarray = Field(..., description="RIS phase vector")
    c: np.ndarray = Field(..., description="Wiener equalizer (d x N_R)")
    objective: float = Field(..., description="Final g_MSE")
    anmse: float = Field(..., description="Average normalized MSE")
    trace: List[float] = Field(default_factory=list, description="g_MSE per outer iteration")
    iterations: int = Field(0, ge=0)
    converged: bool = Field(False)
    ris_method: RisMethod = Field(RisMethod.MM)

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def n_streams(self) -> int:
        return int(self.w.shape[1])
