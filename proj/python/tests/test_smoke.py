import itertools
import math

import numpy as np
import pytest

import newtonlk


def sigma_subsets(values, k):
    return sum(math.prod(c) for c in itertools.combinations(values, k))


def test_elementary_symmetric_matches_subsets():
    kappa = [0.3, -1.2, 2.0, 0.7]
    s = newtonlk.elementary_symmetric(kappa)
    assert len(s) == 5
    for k in range(5):
        assert s[k] == pytest.approx(sigma_subsets(kappa, k), abs=1e-12)


def test_newton_matrix_paths_agree():
    rng = np.random.default_rng(3)
    B = rng.uniform(-1, 1, (4, 4))
    S = (B + B.T) / 2
    for k in range(5):
        P = newtonlk.newton_matrix(S, k)
        assert np.allclose(P, newtonlk.newton_matrix_sum(S, k), atol=1e-12)
        assert np.allclose(P @ S, S @ P, atol=1e-12)
    t = newtonlk.trace_identities(S, 2)
    assert max(t["residual_p"], t["residual_sp"], t["residual_s2p"]) < 1e-12


def test_newton_eigenvalues_drop_one_curvature():
    kappa = [-1.0, 0.5, 2.0]
    vals = newtonlk.newton_eigenvalues(kappa, 1)
    assert vals == pytest.approx([2.5, 1.0, -0.5])


def test_cap_prediction():
    A, b = newtonlk.predicted_affine("umbilic_sphere_cap", n=2, c=1, tau=0.5, k=0)
    assert np.allclose(A, -8.0 / 3.0 * np.eye(4))
    assert np.allclose(b, [0, 0, 0, 4.0 / 3.0])


def test_example3_shapes():
    assert newtonlk.classify_example3(1.0, 0.0)[0] == "hyperbolic_space"
    shape, radius = newtonlk.classify_example3(-1.0, -2.0)
    assert shape == "sphere"
    assert radius == pytest.approx(math.sqrt(3.0))


def test_samples_satisfy_affine_law():
    u, x, lkx = newtonlk.sample_family("riemannian_product", n=2, c=1, r=math.sqrt(0.5), samples=30, seed=2)
    assert u.shape == (30, 2) and x.shape == (30, 4) and lkx.shape == (30, 4)
    assert np.allclose(lkx, -2.0 * x, atol=1e-9)


def test_verify_example_report():
    report = newtonlk.verify_example("umbilic_sphere_cap", n=2, tau=0.5, k=0, samples=80)
    assert report["schema_version"] == newtonlk.SCHEMA_VERSION
    for key in ("config_echo", "predicted", "fitted", "residuals", "identities", "classification"):
        assert key in report
    assert report["pass"] is True
    assert report["classification"]["verdict"] == "totally_umbilical"


def test_identity_suite_passes():
    report = newtonlk.identity_suite(n_max=4, trials=5, seed=1)
    assert report["pass"] is True


def test_fit_rejects_malformed_csv():
    with pytest.raises(ValueError):
        newtonlk.fit_csv("u_1,u_2\n1,2\n", k=0, c=1)


def test_bad_family_parameters():
    with pytest.raises(ValueError):
        newtonlk.predicted_affine("umbilic_sphere_cap", n=2, tau=1.5)
