"""
Channel Schemas
Estimated channels and sampled true channels
"""
import numpy as np
from pydantic import BaseModel, Field, model_validator


class ChannelEstimate(BaseModel):
    """Estimated direct and compound channels with their error statistics"""
    h_d_bar: np.ndarray = Field(..., description="Estimated direct channel (N_R x N_T)")
    g_bars: np.ndarray = Field(..., description="Estimated compound channels (M x N_R x N_T)")
    sigma_d_sq: float = Field(0.0, ge=0, description="Absolute direct-channel error variance")
    sigma_m_sq: float = Field(0.0, ge=0, description="Absolute per-compound error variance")

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @model_validator(mode="after")
    def _check_shapes(self) -> "ChannelEstimate":
        if self.h_d_bar.ndim != 2 or self.g_bars.ndim != 3:
            raise ValueError("h_d_bar must be 2-D and g_bars 3-D")
        if self.g_bars.shape[1:] != self.h_d_bar.shape:
            raise ValueError(
                f"compound channels {self.g_bars.shape[1:]} do not match direct channel {self.h_d_bar.shape}"
            )
        return self

    @property
    def n_rx(self) -> int:
        return int(self.h_d_bar.shape[0])

    @property
    def n_tx(self) -> int:
        return int(self.h_d_bar.shape[1])

    @property
    def n_ris(self) -> int:
        return int(self.g_bars.shape[0])

    @property
    def total_error_variance(self) -> float:
        """sigma_d^2 + sum over m of sigma_m^2"""
        return self.sigma_d_sq + self.n_ris * self.sigma_m_sq

    def without_errors(self) -> "ChannelEstimate":
        """Copy that treats the estimate as perfect CSI"""
        return self.model_copy(update={"sigma_d_sq": 0.0, "sigma_m_sq": 0.0})


class TrueChannelSample(BaseModel):
    """One realization of the true channels and the RIS phase noise"""
    h_d: np.ndarray = Field(..., description="True direct channel")
    g_list: np.ndarray = Field(..., description="True compound channels (M x N_R x N_T)")
    phase_noise: np.ndarray = Field(..., description="Per-element phase error")

    class Config:
        frozen = True
        arbitrary_types_allowed = True
