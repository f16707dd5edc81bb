"""
Configuration Loader
Reads bench run configurations from YAML into validated models
"""
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import logging

import yaml
from pydantic import BaseModel, Field, ValidationError, model_validator

from robust_ris.exceptions import InvalidConfigError
from robust_ris.schemas.bench import Scheme, SweepSpec
from robust_ris.schemas.geometry import Geometry
from robust_ris.schemas.solution import SolverOptions
from robust_ris.schemas.system import SystemConfig
from robust_ris.utils.helpers import dbm_to_watts

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path("config/config.yaml")

DESK_SYSTEM = {
    "n_tx": 4,
    "n_rx": 4,
    "n_streams": 4,
    "n_ris": 16,
    "bits": 2,
    "power": dbm_to_watts(20.0),
    "noise_var": dbm_to_watts(-100.0),
    "beta_t": 0.08,
    "beta_r": 0.08,
    "sigma_d_sq": 0.01,
    "sigma_m_sq": 0.01,
}


class PaperScale(BaseModel):
    """Overrides applied by --paper-scale"""
    n_tx: int = Field(8, ge=1)
    n_rx: int = Field(8, ge=1)
    n_streams: int = Field(8, ge=1)
    n_ris: int = Field(64, ge=1)
    trials: int = Field(500, ge=1)


class BenchConfig(BaseModel):
    """Everything one CLI invocation needs"""
    system: SystemConfig = Field(default_factory=lambda: SystemConfig(**DESK_SYSTEM))
    geometry: Geometry = Field(default_factory=Geometry)
    sweep: Optional[SweepSpec] = Field(None, description="Sweep run by the sweep command")
    solver: SolverOptions = Field(default_factory=SolverOptions)
    schemes: List[Scheme] = Field(default_factory=lambda: list(Scheme))
    paper_scale: PaperScale = Field(default_factory=PaperScale)

    @model_validator(mode="before")
    @classmethod
    def _convert_dbm(cls, data: Any) -> Any:
        if not isinstance(data, dict) or not isinstance(data.get("system"), dict):
            return data
        system = {**DESK_SYSTEM, **data["system"]}
        if "power_dbm" in system:
            system["power"] = dbm_to_watts(float(system.pop("power_dbm")))
        if "noise_dbm" in system:
            system["noise_var"] = dbm_to_watts(float(system.pop("noise_dbm")))
        return {**data, "system": system}

    def at_paper_scale(self) -> "BenchConfig":
        """Copy with the full-size array dimensions and trial count"""
        scale = self.paper_scale
        system = SystemConfig(
            **{
                **self.system.model_dump(),
                "n_tx": scale.n_tx,
                "n_rx": scale.n_rx,
                "n_streams": scale.n_streams,
                "n_ris": scale.n_ris,
            }
        )
        sweep = self.sweep.model_copy(update={"trials": scale.trials}) if self.sweep else None
        return self.model_copy(update={"system": system, "sweep": sweep})


def parse_config(data: Optional[Dict[str, Any]]) -> BenchConfig:
    """Validate a decoded mapping, raising InvalidConfigError on bad fields"""
    try:
        return BenchConfig.model_validate(data or {})
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
        )
        raise InvalidConfigError(problems) from e


def load_config(path: Optional[Union[str, Path]] = None) -> BenchConfig:
    """Load a YAML config; desk-scale defaults when no path is given and the default is absent"""
    if path is None:
        if not DEFAULT_CONFIG_PATH.exists():
            logger.info("No config file found, using desk-scale defaults")
            return BenchConfig()
        path = DEFAULT_CONFIG_PATH

    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise InvalidConfigError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise InvalidConfigError(f"malformed YAML in {path}: {e}") from e

    if data is not None and not isinstance(data, dict):
        raise InvalidConfigError(f"{path} must hold a mapping at the top level")
    logger.info(f"Loaded configuration from {path}")
    return parse_config(data)
