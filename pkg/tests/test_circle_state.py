import numpy as np
import pytest

from ringspread import (
    CircleState,
    DegenerateStateError,
    NormalizationError,
    ParameterRangeError,
    density,
    evaluate,
    lz_moments,
    make_cat,
    make_coherent,
    make_density_poly,
    make_eigenstate,
    make_fourier,
    make_from_samples,
    make_trig,
    measure_kr,
    measure_tilde,
    rotate,
    truncate,
)
from ringspread.circle_state import MAX_M

from conftest import same_up_to_phase

S2 = 1 / np.sqrt(2)
PHI = np.linspace(-np.pi, np.pi, 97)


def test_eigenstate_uniform_density():
    s = make_eigenstate(0)
    assert np.allclose(density(s, PHI), 1 / (2 * np.pi), atol=1e-15)
    assert evaluate(s, 1.234) == pytest.approx(1 / np.sqrt(2 * np.pi))


def test_eigenstate_lz():
    assert lz_moments(make_eigenstate(3)) == (3.0, 0.0)


def test_eigenstate_tilde_is_one():
    assert measure_tilde(make_eigenstate(1)) == pytest.approx(1.0, abs=1e-15)


def test_eigenstate_cap():
    make_eigenstate(MAX_M)
    with pytest.raises(ParameterRangeError):
        make_eigenstate(MAX_M + 1)


def test_trig_sin_coefficients():
    s = make_trig(1, "sin")
    assert s.coefficient(1) == pytest.approx(-1j * S2)
    assert s.coefficient(-1) == pytest.approx(1j * S2)
    assert s.coefficient(0) == 0


def test_trig_cos_coefficients():
    s = make_trig(1, "cos")
    assert s.coefficient(1) == pytest.approx(S2)
    assert s.coefficient(-1) == pytest.approx(S2)


@pytest.mark.parametrize("k,phase,fn", [(1, "sin", np.sin), (1, "cos", np.cos),
                                        (2, "sin", np.sin), (3, "cos", np.cos)])
def test_trig_matches_closed_form(k, phase, fn):
    s = make_trig(k, phase)
    assert np.allclose(evaluate(s, PHI), fn(k * PHI) / np.sqrt(np.pi), atol=1e-14)


def test_psi_s2_density_is_quarter_period():
    s = make_trig(2, "sin")
    assert np.allclose(density(s, PHI), np.sin(2 * PHI) ** 2 / np.pi, atol=1e-15)
    assert np.allclose(density(s, PHI + np.pi / 2), density(s, PHI), atol=1e-15)


def test_trig_bad_harmonic():
    with pytest.raises(ParameterRangeError):
        make_trig(0, "sin")
    with pytest.raises(ParameterRangeError):
        make_trig(1, "tan")


def test_coherent_peak_at_origin():
    s = make_coherent(0.0, 0.0)
    p = density(s, PHI)
    assert PHI[np.argmax(p)] == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(p, p[::-1], atol=1e-15)


def test_coherent_kr_phi_half():
    kr_phi, _ = measure_kr(make_coherent(0.0, 0.0))
    assert kr_phi == pytest.approx(0.5, abs=1e-12)


def test_coherent_rotated_by_pi():
    a = make_coherent(0.0, 0.0)
    b = make_coherent(0.0, np.pi)
    assert np.allclose(density(b, PHI), density(a, PHI - np.pi), atol=1e-14)


@pytest.mark.parametrize("l,theta", [(0.0, 0.0), (0.5, 0.3), (-1.3, 2.0), (3.0, -1.0)])
def test_coherent_is_eigenvector_of_z(l, theta):
    s = make_coherent(l, theta)
    c = s.coefficients
    xi = np.exp(l + 1j * theta)
    ms = s.ms[1:]
    # (Z psi)_m = exp(-m + 1/2) c_{m-1} must equal xi c_m wherever c_{m-1} is kept
    z_psi = np.exp(-ms + 0.5) * c[:-1]
    assert np.allclose(z_psi, xi * c[1:], rtol=1e-12, atol=0)
    # the relation is broken only at the ends, by the dropped tail
    wide = np.arange(-80, 81)
    w = np.exp(-2 * wide * l - wide ** 2.0)
    w /= w.sum()
    dropped = w[(wide < s.m_min) | (wide > s.m_max)].sum()
    assert dropped < 1e-14


@pytest.mark.parametrize("l", [0.0, 0.5, -2.7])
def test_coherent_lz_mean_near_minus_l(l):
    mean, var = lz_moments(make_coherent(l, 0.0))
    assert mean == pytest.approx(-l, abs=0.01)
    assert var > 0


def test_coherent_range_guard():
    with pytest.raises(ParameterRangeError):
        make_coherent(10.5, 0.0)


def test_cat_parity_and_pi_periodicity():
    s = make_cat(0.0, 0.0)
    even = s.coefficients[s.ms % 2 == 0]
    assert np.all(even == 0)
    assert np.allclose(density(s, PHI + np.pi), density(s, PHI), atol=1e-15)
    assert measure_tilde(s) == pytest.approx(1.0, abs=1e-12)


def test_cat_with_phase():
    s = make_cat(0.7, 1.1)
    assert np.all(s.coefficients[s.ms % 2 == 0] == 0)


def test_density_poly_expansion():
    s = make_density_poly(0.2)
    raw = (0.2 + np.sin(PHI) ** 2) ** 2
    psi = evaluate(s, PHI)
    ratio = psi.real / raw
    assert np.allclose(ratio, ratio[0], rtol=1e-13)
    assert np.max(np.abs(psi.imag)) < 1e-15
    assert s.m_min == -4 and s.m_max == 4


def test_density_poly_two_peaks():
    s = make_density_poly(0.2)
    p = density(s, PHI)
    local_max = PHI[(p > np.roll(p, 1)) & (p > np.roll(p, -1))]
    assert np.allclose(sorted(local_max), [-np.pi / 2, np.pi / 2], atol=0.05)


def test_density_poly_large_offset_is_nearly_uniform():
    p = density(make_density_poly(1e3), PHI)
    assert np.max(np.abs(p - 1 / (2 * np.pi))) < 1e-2


def test_density_poly_bad_offset():
    with pytest.raises(ParameterRangeError):
        make_density_poly(0.0)


def test_samples_single_basis_function():
    x = 2 * np.pi * np.arange(16) / 16
    s = make_from_samples(np.exp(1j * x) / np.sqrt(2 * np.pi))
    assert s.m_min == 1 and s.coefficients.size == 1
    assert abs(s.coefficients[0]) == pytest.approx(1.0)


def test_samples_reproduce_trig():
    x = 2 * np.pi * np.arange(32) / 32
    s = make_from_samples(np.sin(x) / np.sqrt(np.pi))
    ref = make_trig(1, "sin")
    assert s.m_min == -1 and s.m_max == 1
    assert same_up_to_phase(s.coefficients, ref.coefficients) < 1e-12


def test_samples_reproduce_density_poly():
    x = 2 * np.pi * np.arange(64) / 64
    s = make_from_samples((0.2 + np.sin(x) ** 2) ** 2)
    ref = make_density_poly(0.2)
    assert (s.m_min, s.m_max) == (ref.m_min, ref.m_max)
    assert same_up_to_phase(s.coefficients, ref.coefficients) < 1e-12


def test_samples_reevaluate_at_nodes():
    rng = np.random.default_rng(3)
    n = 32
    vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    origin = -np.pi
    s = make_from_samples(vals, origin=origin)
    nodes = origin + 2 * np.pi * np.arange(n) / n
    norm = np.sqrt(np.sum(np.abs(vals) ** 2) * 2 * np.pi / n)
    assert np.allclose(evaluate(s, nodes), vals / norm, atol=1e-10)


def test_samples_errors():
    with pytest.raises(DegenerateStateError):
        make_from_samples(np.zeros(8))
    with pytest.raises(ParameterRangeError):
        make_from_samples([1.0, 2.0])


@pytest.mark.parametrize("name", ["psi_s", "psi_c", "psi_s2", "psi_s4", "cs", "cat"])
def test_builders_agree_with_sample_ingestion(catalog, name):
    s = catalog[name]
    n = 128
    x = 2 * np.pi * np.arange(n) / n
    fitted = make_from_samples(evaluate(s, x))
    assert (fitted.m_min, fitted.m_max) == (s.m_min, s.m_max)
    assert same_up_to_phase(fitted.coefficients, s.coefficients) < 1e-10


def test_builder_normalization(catalog):
    for s in catalog.values():
        assert abs(s.norm - 1.0) < 1e-12


def test_constructor_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        CircleState(0, [1.0, 1.0])
    with pytest.raises(DegenerateStateError):
        CircleState(0, [0.0])
    with pytest.raises(DegenerateStateError):
        CircleState(0, [])


def test_coefficients_read_only(catalog):
    with pytest.raises(ValueError):
        catalog["psi_s"].coefficients[0] = 1.0


def test_fourier_builder():
    s = make_fourier([[1, 0.0, -S2], [-1, 0.0, S2]])
    assert same_up_to_phase(s.coefficients, make_trig(1, "sin").coefficients) < 1e-15
    with pytest.raises(NormalizationError):
        make_fourier([[0, 2.0, 0.0]])
    assert make_fourier([[0, 2.0, 0.0]], normalize=True).coefficient(0) == 1.0
    with pytest.raises(ParameterRangeError):
        make_fourier([[0, 1.0, 0.0], [0, 0.0, 0.0]])


def test_evaluate_periodic(catalog):
    for s in catalog.values():
        x = np.linspace(-7, 7, 41)
        assert np.allclose(evaluate(s, x), evaluate(s, x + 2 * np.pi), atol=1e-13)
        reduced = np.remainder(x, 2 * np.pi)
        assert np.array_equal(evaluate(s, reduced), evaluate(s, x))


def test_trig_sin_value_at_quarter_turn():
    assert abs(evaluate(make_trig(1, "sin"), np.pi / 2)) == pytest.approx(1 / np.sqrt(np.pi))


@pytest.mark.parametrize("theta0", [0.3, -2.0, np.pi])
def test_rotation_shifts_density(catalog, theta0):
    for s in catalog.values():
        r = rotate(s, theta0)
        assert np.allclose(density(r, PHI), density(s, PHI - theta0), atol=1e-12)


def test_truncate():
    s = truncate(make_coherent(0.0, 0.0), 2)
    assert (s.m_min, s.m_max) == (-2, 2)
    assert abs(s.norm - 1) < 1e-12
    with pytest.raises(DegenerateStateError):
        truncate(make_eigenstate(5), 2)
