"""
Benchmark Schemas
Schemes, sweep specifications and aggregated reports
"""
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

CSV_COLUMNS = [
    "variable",
    "value",
    "scheme",
    "anmse_mean",
    "anmse_std",
    "mean_iterations",
    "mean_wallclock_s",
]


class Scheme(str, Enum):
    """Beamforming schemes compared in a sweep"""
    AO_MM = "ao_mm"
    AO_RGA = "ao_rga"
    PERFECT_HARDWARE = "perfect_hardware"
    PERFECT_CSI = "perfect_csi"
    RANDOM_PHASE = "random_phase"
    IDENTITY_PHASE = "identity_phase"
    NONROBUST = "nonrobust"


class SweepVariable(str, Enum):
    """Parameter varied across a sweep"""
    POWER_DBM = "power_dbm"
    BETA_R = "beta_r"
    BETA_T = "beta_t"
    SIGMA_D_SQ = "sigma_d_sq"
    SIGMA_M_SQ = "sigma_m_sq"
    BITS = "bits"
    N_RIS = "n_ris"


class SweepSpec(BaseModel):
    """Values, trial count and seed of a Monte-Carlo sweep"""
    variable: SweepVariable = Field(..., description="Swept parameter")
    values: List[float] = Field(..., min_length=1, description="Sweep points")
    trials: int = Field(100, ge=1, description="Channel realizations per point")
    seed: int = Field(0, ge=0, description="Master seed")

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "variable": "power_dbm",
                "values": [0, 10, 20, 30],
                "trials": 100,
                "seed": 2024,
            }
        }


class TrialOutcome(BaseModel):
    """Result of one scheme on one channel realization"""
    value_index: int
    value: float
    trial: int
    scheme: Scheme
    anmse: Optional[float] = None
    iterations: int = 0
    wallclock_s: float = 0.0
    error: Optional[str] = Field(None, description="Failure diagnostic if the solve aborted")

    @property
    def failed(self) -> bool:
        return self.error is not None


class SweepRow(BaseModel):
    """Aggregated statistics of one scheme at one sweep point"""
    variable: str
    value: float
    scheme: str
    anmse_mean: float
    anmse_std: float
    mean_iterations: float
    mean_wallclock_s: float


class TrialAccounting(BaseModel):
    """Completed and failed trial counts of one report row"""
    value: float
    scheme: str
    completed: int = Field(..., ge=0)
    failed: int = Field(..., ge=0)


class SweepReport(BaseModel):
    """Rows ready for CSV emission plus failure accounting"""
    rows: List[SweepRow] = Field(default_factory=list)
    accounting: List[TrialAccounting] = Field(default_factory=list)
