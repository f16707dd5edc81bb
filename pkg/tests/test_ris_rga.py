"""
Riemannian Phase Update Tests
"""
import numpy as np
import pytest

from robust_ris.exceptions import DegenerateDirectionError
from robust_ris.models.mse import g_mse
from robust_ris.models.ris_mm import build_quadratic, mm_phase_optimize
from robust_ris.models.ris_rga import euclidean_gradient, retract, rga_optimize, riemannian_gradient
from robust_ris.models.system import phase_codebook
from robust_ris.schemas.solution import QuadraticSurrogate, RgaConfig
from tests.factories import make_config, make_instance


def test_riemannian_gradient_is_tangent(instance):
    """The projected gradient has no radial component"""
    cfg, est, consts, theta, w = instance
    q = build_quadratic(w, theta, est, cfg, consts)
    grad = riemannian_gradient(theta, q)
    np.testing.assert_allclose(np.real(grad * np.conj(theta)), 0.0, atol=1e-12)


def test_euclidean_gradient_matches_finite_differences(instance):
    """Directional derivative of the quadratic equals Re(grad^H delta)"""
    cfg, est, consts, theta, w = instance
    q = build_quadratic(w, theta, est, cfg, consts)
    grad = euclidean_gradient(theta, q)
    rng = np.random.default_rng(0)
    delta = rng.standard_normal(cfg.n_ris) + 1j * rng.standard_normal(cfg.n_ris)
    step = 1e-6
    numeric = (q.value(theta + step * delta) - q.value(theta - step * delta)) / (2 * step)
    assert abs(numeric - np.real(np.vdot(grad, delta))) < 1e-5 * max(1.0, abs(numeric))


def test_retract_to_codebook(rng):
    """Retraction maps nonzero entries to codebook members"""
    codebook = phase_codebook(2)
    theta = retract(rng.standard_normal(6) + 1j * rng.standard_normal(6), codebook)
    assert codebook.contains(theta)


def test_retract_zero_entry():
    """A zero entry has no phase to round"""
    with pytest.raises(DegenerateDirectionError):
        retract(np.array([1.0 + 0j, 0.0 + 0j]), phase_codebook(2))


@pytest.mark.parametrize("rho_0", [None, 0.1])
@pytest.mark.parametrize("seed", range(5))
def test_rga_is_monotone(seed, rho_0):
    """Surrogate trace never decreases and g_MSE does not drop"""
    cfg = make_config(n_ris=8)
    cfg, est, consts, theta, w = make_instance(seed, cfg)
    codebook = phase_codebook(cfg.bits)
    result = rga_optimize(w, theta, est, cfg, consts, codebook, RgaConfig(rho_0=rho_0))
    assert all(b >= a - 1e-12 for a, b in zip(result.trace, result.trace[1:]))
    assert codebook.contains(result.theta)
    assert g_mse(w, result.theta, est, cfg, consts) >= g_mse(w, theta, est, cfg, consts) - 1e-9


def test_retract_wraps_around_seam():
    """An angle just below pi is closest to -pi on the one-bit codebook"""
    theta = retract(np.array([np.exp(1j * (np.pi - 0.01))]), phase_codebook(1))
    np.testing.assert_allclose(theta, np.array([-1.0 + 0j]), atol=1e-12)
    assert abs(abs(np.angle(theta[0])) - np.pi) < 1e-12


@pytest.mark.parametrize("bits", [1, 2, 3])
def test_retract_is_idempotent(rng, bits):
    """Retracting a codebook vector leaves it unchanged"""
    codebook = phase_codebook(bits)
    once = retract(rng.standard_normal(8) + 1j * rng.standard_normal(8), codebook)
    np.testing.assert_array_equal(retract(once, codebook), once)
    member = codebook.random(8, rng)
    np.testing.assert_allclose(retract(member, codebook), member, atol=1e-12)


def test_rga_stationary_start_returns_immediately():
    """A flat quadratic gives no direction to move in"""
    q = QuadraticSurrogate(
        xi_bar=np.zeros(4, dtype=complex), k_bar=np.zeros((4, 4), dtype=complex), lip=0.0, const_term=0.0
    )
    cfg, est, consts, theta, w = make_instance(0, make_config(n_ris=3))
    result = rga_optimize(w, theta, est, cfg, consts, phase_codebook(cfg.bits), q=q)
    np.testing.assert_array_equal(result.theta, theta)
    assert result.iterations == 0


def test_rga_agrees_with_mm_on_small_instances():
    """Both phase searches land on similar objectives at M=4, b=2"""
    agree = 0
    for seed in range(10):
        cfg = make_config(n_ris=4, bits=2)
        cfg, est, consts, _, w = make_instance(seed, cfg)
        codebook = phase_codebook(2)
        theta_0 = codebook.identity(4)
        start = g_mse(w, theta_0, est, cfg, consts)
        mm = g_mse(w, mm_phase_optimize(w, theta_0, est, cfg, consts, codebook).theta, est, cfg, consts)
        rga = g_mse(w, rga_optimize(w, theta_0, est, cfg, consts, codebook).theta, est, cfg, consts)
        assert rga >= start - 1e-9 and mm >= start - 1e-9
        if abs(rga - mm) <= 0.02 * abs(mm):
            agree += 1
    assert agree >= 6
