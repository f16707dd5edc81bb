"""
Geometry Schemas
Node placement, path-loss parameters and line-of-sight angles
"""
from enum import Enum
from typing import Tuple
import math

import numpy as np
from pydantic import BaseModel, Field, model_validator


class Link(str, Enum):
    """Propagation links of the deployment"""
    BS_USER = "bu"
    BS_RIS = "br"
    RIS_USER = "ru"


class Geometry(BaseModel):
    """Deployment geometry and large-scale fading parameters"""
    bs_pos: Tuple[float, float, float] = Field((0.0, 0.0, 5.0), description="BS position (m)")
    ris_pos: Tuple[float, float, float] = Field((0.0, 85.0, 10.0), description="RIS position (m)")
    user_pos: Tuple[float, float, float] = Field((5.0, 120.0, 1.5), description="User position (m)")
    pl0_db: float = Field(30.0, description="Path loss at the 1 m reference distance")
    alpha_bu: float = Field(3.75, gt=0, description="BS-user path-loss exponent")
    alpha_br: float = Field(2.2, gt=0, description="BS-RIS path-loss exponent")
    alpha_ru: float = Field(2.2, gt=0, description="RIS-user path-loss exponent")
    shadow_std_db: float = Field(3.0, ge=0, description="Log-normal shadowing deviation")
    rician_factor: float = Field(0.75, ge=0, description="Rician factor of the compound channels")

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "bs_pos": [0, 0, 5],
                "ris_pos": [0, 85, 10],
                "user_pos": [5, 120, 1.5],
                "pl0_db": 30,
                "alpha_bu": 3.75,
                "alpha_br": 2.2,
                "alpha_ru": 2.2,
                "shadow_std_db": 3,
                "rician_factor": 0.75,
            }
        }

    @model_validator(mode="after")
    def _check_positions(self) -> "Geometry":
        points = [self.bs_pos, self.ris_pos, self.user_pos]
        if len({tuple(p) for p in points}) != len(points):
            raise ValueError("bs_pos, ris_pos and user_pos must be distinct")
        return self

    def distance(self, link: Link) -> float:
        """Euclidean length of a link in meters"""
        ends = {
            Link.BS_USER: (self.bs_pos, self.user_pos),
            Link.BS_RIS: (self.bs_pos, self.ris_pos),
            Link.RIS_USER: (self.ris_pos, self.user_pos),
        }[Link(link)]
        return math.dist(*ends)

    def exponent(self, link: Link) -> float:
        return {
            Link.BS_USER: self.alpha_bu,
            Link.BS_RIS: self.alpha_br,
            Link.RIS_USER: self.alpha_ru,
        }[Link(link)]


class LoSAngles(BaseModel):
    """Angles and gains of the pure line-of-sight BS-RIS-user path"""
    psi_tx: float = Field(..., description="AoD at the BS")
    psi_rx: float = Field(..., description="AoA at the user")
    psi_a: float = Field(..., description="Azimuth AoA at the RIS")
    theta_a: float = Field(..., description="Elevation AoA at the RIS")
    psi_d: float = Field(..., description="Azimuth AoD at the RIS")
    theta_d: float = Field(..., description="Elevation AoD at the RIS")
    nu_i: complex = Field(1.0 + 0.0j, description="BS-RIS LoS gain")
    nu_r: complex = Field(1.0 + 0.0j, description="RIS-user LoS gain")
    spacing_ratio: float = Field(0.5, gt=0, description="Element spacing over wavelength")
    m_x: int = Field(..., ge=1, description="UPA rows")
    m_y: int = Field(..., ge=1, description="UPA columns")

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def n_ris(self) -> int:
        return self.m_x * self.m_y

    @classmethod
    def random(cls, n_ris: int, rng: np.random.Generator, spacing_ratio: float = 0.5) -> "LoSAngles":
        """Azimuths uniform on [-pi/2, pi/2], elevations on [0, pi/2], unit gains with uniform phase"""
        m_x = max(k for k in range(1, int(math.isqrt(n_ris)) + 1) if n_ris % k == 0)
        azimuth = rng.uniform(-np.pi / 2, np.pi / 2, size=4)
        elevation = rng.uniform(0.0, np.pi / 2, size=2)
        gains = np.exp(1j * rng.uniform(-np.pi, np.pi, size=2))
        return cls(
            psi_tx=float(azimuth[0]),
            psi_rx=float(azimuth[1]),
            psi_a=float(azimuth[2]),
            theta_a=float(elevation[0]),
            psi_d=float(azimuth[3]),
            theta_d=float(elevation[1]),
            nu_i=complex(gains[0]),
            nu_r=complex(gains[1]),
            spacing_ratio=spacing_ratio,
            m_x=m_x,
            m_y=n_ris // m_x,
        )
