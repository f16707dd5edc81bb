# Robust RIS Beamforming

from .helpers import (
    cscg,
    db_to_linear,
    dbm_to_watts,
    diag_part,
    hermitize,
    trial_rng,
    watts_to_dbm,
    wrap_phase,
)

__all__ = [
    "cscg",
    "db_to_linear",
    "dbm_to_watts",
    "diag_part",
    "hermitize",
    "trial_rng",
    "watts_to_dbm",
    "wrap_phase",
]
