import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ringspread import (
    NumericalDomainError,
    ParameterRangeError,
    central_moment_phi,
    covariance_lz_phi,
    density,
    exp_2lz_moments,
    expectation_exp_ikphi,
    lz_moments,
    make_coherent,
    make_eigenstate,
    make_fourier,
    make_trig,
    mean_phi,
    trig_moments,
    variance_phi,
    window_moments,
)
from ringspread.moments import (
    covariance_quadrature,
    central_moment_quadrature,
    mean_phi_quadrature,
    variance_phi_derivative,
    variance_phi_quadrature,
)

PI = np.pi
PHI0 = np.linspace(-PI, PI, 41)


def test_uniform_moments():
    u = make_eigenstate(0)
    assert np.allclose(mean_phi(u, PHI0), PHI0, atol=1e-14)
    assert np.allclose(variance_phi(u, PHI0), PI ** 2 / 3, atol=1e-13)
    assert np.allclose(central_moment_phi(u, 3, PHI0), 0.0, atol=1e-12)
    assert np.allclose(central_moment_phi(u, 4, PHI0), PI ** 4 / 5, atol=1e-11)


def test_eigenstates_look_uniform():
    for m in (-7, 3, 40):
        s = make_eigenstate(m)
        assert np.allclose(variance_phi(s, PHI0), PI ** 2 / 3, atol=1e-13)


def test_psi_s_closed_forms():
    s = make_trig(1, "sin")
    assert np.allclose(mean_phi(s, PHI0), PHI0 - np.sin(2 * PHI0) / 2, atol=1e-13)
    want = PI ** 2 / 3 - np.cos(2 * PHI0) / 2 - np.sin(2 * PHI0) ** 2 / 4
    assert np.allclose(variance_phi(s, PHI0), want, atol=1e-13)


def test_psi_s2_closed_forms():
    s = make_trig(2, "sin")
    assert np.allclose(mean_phi(s, PHI0), PHI0 - np.sin(4 * PHI0) / 4, atol=1e-13)
    want = PI ** 2 / 3 - np.cos(4 * PHI0) / 8 - np.sin(4 * PHI0) ** 2 / 16
    assert np.allclose(variance_phi(s, PHI0), want, atol=1e-13)


def test_scalar_input_gives_scalar_shape():
    s = make_trig(1, "sin")
    assert np.shape(mean_phi(s, 0.3)) == ()
    assert np.shape(variance_phi(s, 0.3)) == ()


def test_second_central_moment_is_variance(corpus):
    for s in corpus[:10]:
        assert np.allclose(central_moment_phi(s, 2, PHI0), variance_phi(s, PHI0), atol=1e-12)
        assert np.all(central_moment_phi(s, 1, PHI0) == 0)


def test_central_moment_order_range():
    s = make_eigenstate(0)
    for n in (0, 9):
        with pytest.raises(ParameterRangeError):
            central_moment_phi(s, n, 0.0)


def test_periodicity(corpus):
    for s in corpus[:10]:
        assert np.allclose(mean_phi(s, PHI0 + 2 * PI), mean_phi(s, PHI0) + 2 * PI, atol=1e-11)
        assert np.allclose(variance_phi(s, PHI0 + 2 * PI), variance_phi(s, PHI0), atol=1e-11)


def test_mean_inside_window_and_variance_bounds(corpus, catalog):
    for s in list(corpus) + list(catalog.values()):
        m = mean_phi(s, PHI0)
        d = variance_phi(s, PHI0)
        assert np.all(np.abs(m - PHI0) <= PI)
        assert np.all(d >= 0) and np.all(d <= PI ** 2)


def test_quadrature_path_agrees(corpus, corpus_phi0):
    for s in corpus[:8]:
        for x in corpus_phi0[:6]:
            assert mean_phi_quadrature(s, x) == pytest.approx(float(mean_phi(s, x)), abs=1e-9)
            assert variance_phi_quadrature(s, x) == pytest.approx(float(variance_phi(s, x)),
                                                                  abs=1e-9)
            assert central_moment_quadrature(s, 3, x) == pytest.approx(
                float(central_moment_phi(s, 3, x)), abs=1e-8)
            re, im = covariance_lz_phi(s, x)
            qre, qim = covariance_quadrature(s, x)
            assert qre == pytest.approx(float(re), abs=1e-9)
            assert qim == pytest.approx(float(im), abs=1e-9)


def test_variance_derivative_matches_finite_difference(corpus):
    h = 1e-5
    for s in corpus[:10]:
        fd = (variance_phi(s, PHI0 + h) - variance_phi(s, PHI0 - h)) / (2 * h)
        assert np.allclose(variance_phi_derivative(s, PHI0), fd, atol=1e-7)


def test_covariance_uniform_is_zero():
    re, im = covariance_lz_phi(make_eigenstate(0), PHI0)
    assert np.all(re == 0) and np.all(im == 0)


def test_covariance_real_state_is_imaginary():
    re, _ = covariance_lz_phi(make_trig(1, "sin"), PHI0)
    assert np.allclose(re, 0.0, atol=1e-14)


def test_imaginary_covariance_oracle(corpus):
    # integrating by parts over the window leaves only the boundary term
    for s in corpus:
        _, im = covariance_lz_phi(s, PHI0)
        want = PI * density(s, PHI0 + PI) - 0.5
        assert np.allclose(im, want, atol=1e-12)


def test_window_moments_bundle():
    s = make_trig(1, "sin")
    wm = window_moments(s, 0.4)
    assert wm.mean == pytest.approx(0.4 - np.sin(0.8) / 2, abs=1e-14)
    assert wm.variance == pytest.approx(float(variance_phi(s, 0.4)), abs=1e-14)
    assert wm.cov_im == pytest.approx(PI * float(density(s, 0.4 + PI)) - 0.5, abs=1e-13)


def test_exp_ikphi():
    s = make_trig(1, "sin")
    assert expectation_exp_ikphi(s, 2) == pytest.approx(-0.5, abs=1e-15)
    assert expectation_exp_ikphi(s, -2) == pytest.approx(-0.5, abs=1e-15)
    assert expectation_exp_ikphi(s, 1) == 0
    assert expectation_exp_ikphi(s, 5) == 0


def test_exp_ikphi_matches_coefficient_sum(corpus):
    for s in corpus[:10]:
        c = {m: s.coefficient(m) for m in s.ms}
        for k in (-3, 1, 2, 4):
            want = sum(np.conj(c[m]) * c.get(m - k, 0) for m in s.ms)
            assert expectation_exp_ikphi(s, k) == pytest.approx(want, abs=1e-14)


@pytest.mark.parametrize("state, vc, vs", [
    (make_eigenstate(3), 0.5, 0.5),
    (make_trig(1, "cos"), 0.75, 0.25),
    (make_trig(1, "sin"), 0.25, 0.75),
])
def test_trig_variances(state, vc, vs):
    _, _, var_cos, var_sin = trig_moments(state)
    assert var_cos == pytest.approx(vc, abs=1e-15)
    assert var_sin == pytest.approx(vs, abs=1e-15)


def test_lz_moments():
    assert lz_moments(make_eigenstate(4)) == (4.0, 0.0)
    s = make_fourier([[1, 1, 0], [-1, 1, 0]], normalize=True)
    mean, var = lz_moments(s)
    assert mean == pytest.approx(0.0) and var == pytest.approx(1.0)
    mean, var = lz_moments(make_coherent(0.0, 0.0))
    assert mean == pytest.approx(0.0, abs=1e-15)


def test_exp_2lz():
    up, down = exp_2lz_moments(make_eigenstate(2))
    assert up == pytest.approx(np.exp(4.0), rel=1e-15)
    assert down == pytest.approx(np.exp(-4.0), rel=1e-15)


def test_exp_2lz_overflow():
    with pytest.raises(NumericalDomainError, match="m=400"):
        exp_2lz_moments(make_eigenstate(400))


@settings(max_examples=25, deadline=None)
@given(st.floats(-PI, PI), st.integers(0, 49))
def test_im_covariance_oracle_property(x, i):
    from ringspread.corpus import random_states

    s = random_states(50)[i]
    _, im = covariance_lz_phi(s, x)
    assert float(im) == pytest.approx(PI * float(density(s, x + PI)) - 0.5, abs=1e-12)
