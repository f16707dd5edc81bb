"""
Helper utility functions
"""
from typing import Tuple
import logging
import math

import numpy as np
from scipy import linalg

from robust_ris.exceptions import IllConditionedError

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12
POWER_ITERATION_THRESHOLD = 256


def dbm_to_watts(dbm: float) -> float:
    """Convert a power level in dBm to watts"""
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts: float) -> float:
    """Convert a power level in watts to dBm"""
    return 10.0 * math.log10(watts) + 30.0


def db_to_linear(db: float) -> float:
    """Convert a dB ratio to linear scale"""
    return 10.0 ** (db / 10.0)


def hermitize(a: np.ndarray) -> np.ndarray:
    """Symmetrize a (possibly batched) square matrix"""
    return 0.5 * (a + np.swapaxes(a, -1, -2).conj())


def diag_part(a: np.ndarray) -> np.ndarray:
    """Keep only the main diagonal of a (possibly batched) square matrix"""
    return a * np.eye(a.shape[-1])


def cscg(rng: np.random.Generator, shape: Tuple[int, ...], variance: float) -> np.ndarray:
    """Draw circularly-symmetric complex Gaussian entries of the given variance"""
    scale = math.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def wrap_phase(angles: np.ndarray) -> np.ndarray:
    """Wrap angles into [-pi, pi)"""
    return np.mod(np.asarray(angles) + np.pi, 2.0 * np.pi) - np.pi


def hermitian_condition(a: np.ndarray) -> float:
    """Condition number of a Hermitian matrix, infinite if not positive definite"""
    eigvals = linalg.eigvalsh(a)
    if eigvals[0] <= 0.0:
        return math.inf
    return float(eigvals[-1] / eigvals[0])


def checked_cho_factor(a: np.ndarray, limit: float = CONDITION_LIMIT):
    """Cholesky-factor a Hermitian positive definite matrix, rejecting ill-conditioned input"""
    cond = hermitian_condition(a)
    if cond > limit:
        raise IllConditionedError(f"matrix condition number {cond:.3e} exceeds {limit:.0e}")
    try:
        return linalg.cho_factor(a, lower=True, check_finite=False)
    except linalg.LinAlgError as e:
        raise IllConditionedError(f"Cholesky factorization failed: {e}") from e


def largest_eigenvalue(a: np.ndarray, n_iter: int = 500, tol: float = 1e-12) -> float:
    """Largest eigenvalue of a Hermitian PSD matrix"""
    n = a.shape[0]
    if n == 0:
        return 0.0
    if n <= POWER_ITERATION_THRESHOLD:
        return float(linalg.eigvalsh(a, subset_by_index=[n - 1, n - 1])[0])

    # power iteration from a fixed start keeps results reproducible
    v = np.ones(n, dtype=complex) / math.sqrt(n)
    value = 0.0
    for _ in range(n_iter):
        u = a @ v
        norm = np.linalg.norm(u)
        if norm == 0.0:
            return 0.0
        v = u / norm
        new_value = float(np.real(np.vdot(v, a @ v)))
        if abs(new_value - value) <= tol * max(1.0, abs(new_value)):
            return new_value
        value = new_value
    return value


def trial_rng(seed: int, *keys: int) -> np.random.Generator:
    """Independent random source derived from a master seed and integer keys"""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *[int(k) for k in keys]]))


def frobenius_power(w: np.ndarray) -> float:
    """Tr(W W^H)"""
    return float(np.real(np.vdot(w, w)))
