"""
Analysis Schemas
Closed-form coefficients, bound inputs and analysis reports
"""
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field


class LosCoefficients(BaseModel):
    """Scalars that determine g_MSE on a pure line-of-sight channel"""
    c1: float = Field(..., ge=0, description="Aligned cascaded gain")
    c2: float = Field(..., gt=0, description="Distorted receiver noise")
    c3: float = Field(..., ge=0, description="Distorted CSI-error power")
    nu_m_list: np.ndarray = Field(..., description="Per-element LoS gains")

    class Config:
        frozen = True
        arbitrary_types_allowed = True


class MisoBoundInputs(BaseModel):
    """Matrices entering the MISO lower bound"""
    h_tilde_cat: np.ndarray = Field(..., description="N_T x (M+1) stacked channel vectors")
    q: np.ndarray = Field(..., description="Hermitian PSD impairment covariance")

    class Config:
        frozen = True
        arbitrary_types_allowed = True


class AnalysisReport(BaseModel):
    """Bounds and floors evaluated for one instance"""
    n_tx: int
    n_rx: int
    n_ris: int
    bits: int
    floor_hwi: float = Field(..., description="Floor from transceiver distortion alone")
    miso_lower_bound: Optional[float] = Field(None, description="MISO ANMSE lower bound")
    miso_floor: Optional[float] = Field(None, description="High-SNR limit of the MISO bound")
    floor_csi: Optional[float] = Field(None, description="Floor from CSI error alone")
    floor_phase_noise: Optional[float] = Field(None, description="Floor from RIS phase noise alone")
    los_g_star: Optional[float] = Field(None, description="Optimal g_MSE on a pure LoS channel")
    los_anmse: Optional[float] = Field(None, description="ANMSE of the LoS optimum")

    class Config:
        json_schema_extra = {
            "example": {
                "n_tx": 8,
                "n_rx": 1,
                "n_ris": 64,
                "bits": 2,
                "floor_hwi": 0.00715,
                "miso_lower_bound": 0.0213,
                "miso_floor": 0.0121,
                "floor_csi": 0.0098,
                "floor_phase_noise": 0.0043,
                "los_g_star": None,
                "los_anmse": None,
            }
        }
