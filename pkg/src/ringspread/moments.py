"""Window-dependent angle moments and the periodic observables of a state.

Angle moments are taken over the window ``[phi0 - pi, phi0 + pi]`` with the
literal coordinate ``phi`` (no re-branching). With ``u = phi - phi0`` the
raw window moments are

    mu_j(phi0) = int_{-pi}^{pi} u**j p(phi0 + u) du
               = (1/2pi) sum_k P_k exp(i k phi0) J_j(k),

where ``P_k`` are the density harmonics and ``J_j(k)`` the integrals of
``u**j exp(i k u)`` over ``[-pi, pi]``. Everything reduces to finite sums;
quadrature is only used by the ``*_quadrature`` cross-check helpers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Tuple

import numpy as np

from .circle_state import CircleState, density
from .errors import NumericalDomainError, ParameterRangeError
from .numerics import QuadratureConfig, integrate_window

TWO_PI = 2.0 * np.pi
MAX_ORDER = 8
# largest exponent accepted by exp() before overflow
_EXP_LIMIT = np.log(np.finfo(float).max)


@dataclass(frozen=True)
class WindowMoments:
    """Angle moments and l_z-phi covariance at one reference point."""

    phi0: float
    mean: float
    variance: float
    cov_re: float
    cov_im: float


@lru_cache(maxsize=64)
def _window_integrals(kmax: int, jmax: int) -> np.ndarray:
    """``J[j, k] = int_{-pi}^{pi} u**j exp(i k u) du`` for ``k = 0..kmax``."""
    J = np.zeros((jmax + 1, kmax + 1), dtype=complex)
    pi = np.pi
    for j in range(jmax + 1):
        J[j, 0] = (pi ** (j + 1) - (-pi) ** (j + 1)) / (j + 1)
    if kmax >= 1:
        k = np.arange(1, kmax + 1)
        sign = np.where(k % 2 == 0, 1.0, -1.0)
        ik = 1j * k
        # integration by parts: J_j = [u^j e^{iku}/(ik)] - (j/(ik)) J_{j-1}
        for j in range(1, jmax + 1):
            J[j, 1:] = sign * (pi ** j - (-pi) ** j) / ik - j / ik * J[j - 1, 1:]
    J.setflags(write=False)
    return J


def _raw_moments(state: CircleState, phi0, order: int) -> np.ndarray:
    """Raw moments ``mu_0 .. mu_order`` of ``u = phi - phi0`` on the window.

    Returns an array of shape ``(order + 1,) + np.shape(phi0)``.
    """
    P = state.density_harmonics
    K = P.size - 1
    J = _window_integrals(K, order)
    x = np.asarray(phi0, dtype=float)
    flat = x.reshape(-1)
    out = np.empty((order + 1, flat.size))
    base = P[0].real * J[:, 0].real
    if K == 0:
        out[:] = base[:, None]
    else:
        E = np.exp(1j * np.multiply.outer(flat, np.arange(1, K + 1)))
        out[:] = base[:, None] + 2.0 * (E @ (P[1:, None] * J[:, 1:].T)).real.T
    out /= TWO_PI
    return out.reshape((order + 1,) + x.shape)


def mean_phi(state: CircleState, phi0):
    """Mean of the angle over the window centred on ``phi0``.

    Satisfies ``mean_phi(phi0 + 2pi) == mean_phi(phi0) + 2pi``; for a
    uniform density it returns ``phi0`` itself.
    """
    mu = _raw_moments(state, phi0, 1)
    return np.asarray(phi0, dtype=float) + mu[1]


def central_moment_phi(state: CircleState, n: int, phi0):
    """``n``-th central moment of the angle on the window, ``1 <= n <= 8``."""
    if not 1 <= int(n) <= MAX_ORDER:
        raise ParameterRangeError(f"moment order must be in 1..{MAX_ORDER}, got {n}")
    n = int(n)
    mu = _raw_moments(state, phi0, n)
    if n == 1:
        return np.zeros_like(mu[1])
    shift = -mu[1]
    return sum(comb(n, j) * mu[j] * shift ** (n - j) for j in range(n + 1))


def variance_phi(state: CircleState, phi0):
    """Variance of the angle over ``[phi0 - pi, phi0 + pi]``."""
    mu = _raw_moments(state, phi0, 2)
    return mu[2] - mu[1] ** 2


def variance_phi_derivative(state: CircleState, phi0):
    """``d variance_phi / d phi0 = -4 pi (mean_phi - phi0) p(phi0 + pi)``.

    Follows from differentiating the window integrals, whose end points
    move with ``phi0``; the density is periodic so the boundary terms
    combine into ``p(phi0 + pi)``.
    """
    mu = _raw_moments(state, phi0, 1)
    return -4.0 * np.pi * mu[1] * density(state, np.asarray(phi0, dtype=float) + np.pi)


def lz_moments(state: CircleState) -> Tuple[float, float]:
    """Mean and variance of ``l_z = -i d/dphi``."""
    w = np.abs(state.coefficients) ** 2
    m = state.ms.astype(float)
    mean = float(np.dot(w, m))
    var = float(np.dot(w, (m - mean) ** 2))
    return mean, var


def _lz_shifted(state: CircleState) -> np.ndarray:
    mean, _ = lz_moments(state)
    return (state.ms - mean) * state.coefficients


def _cross_harmonics(d: np.ndarray, c: np.ndarray) -> np.ndarray:
    """``Q_k = sum_m conj(d_m) c_{m+k}`` for ``k = -(W-1) .. W-1``."""
    w = c.size
    neg = [np.vdot(d[k:], c[: w - k]) for k in range(w - 1, 0, -1)]
    pos = [np.vdot(d[: w - k], c[k:]) for k in range(w)]
    return np.array(neg + pos)


def covariance_lz_phi(state: CircleState, phi0):
    """Real and imaginary parts of ``G = <(l_z - <l_z>)psi | (phi - M)psi>``.

    ``G`` is integrated over the same window as :func:`mean_phi`; ``l_z``
    acts exactly on the coefficients.
    """
    c = state.coefficients
    w = c.size
    x = np.asarray(phi0, dtype=float)
    if w == 1:
        z = np.zeros_like(x)
        return z, z.copy()
    Q = _cross_harmonics(_lz_shifted(state), c)
    J1 = _window_integrals(w - 1, 1)[1]
    ks = np.arange(-(w - 1), w)
    J1_full = np.concatenate([np.conj(J1[:0:-1]), J1])
    E = np.exp(1j * np.multiply.outer(x.reshape(-1), ks))
    G = (E @ (Q * J1_full)) / TWO_PI
    G = G.reshape(x.shape)
    return G.real, G.imag


def window_moments(state: CircleState, phi0: float) -> WindowMoments:
    mu = _raw_moments(state, phi0, 2)
    re, im = covariance_lz_phi(state, phi0)
    return WindowMoments(float(phi0), float(phi0 + mu[1]), float(mu[2] - mu[1] ** 2),
                         float(re), float(im))


def expectation_exp_ikphi(state: CircleState, k: int) -> complex:
    """``<exp(i k phi)> = sum_m conj(c_m) c_{m-k}``."""
    P = state.density_harmonics
    k = int(k)
    if abs(k) >= P.size:
        return 0j
    return complex(np.conj(P[k])) if k >= 0 else complex(P[-k])


def trig_moments(state: CircleState):
    """``(<cos>, <sin>, Var cos, Var sin)`` from the first two harmonics."""
    e1 = expectation_exp_ikphi(state, 1)
    e2 = expectation_exp_ikphi(state, 2)
    mean_cos, mean_sin = e1.real, e1.imag
    var_cos = 0.5 * (1.0 + e2.real) - mean_cos ** 2
    var_sin = 0.5 * (1.0 - e2.real) - mean_sin ** 2
    return mean_cos, mean_sin, var_cos, var_sin


def _log_exp_2lz(state: CircleState, sign: int):
    w = np.abs(state.coefficients) ** 2
    nz = w > 0
    expo = sign * 2.0 * state.ms[nz] + np.log(w[nz])
    return float(np.log(np.sum(np.exp(expo - expo.max()))) + expo.max()), expo, state.ms[nz]


def exp_2lz_moments(state: CircleState) -> Tuple[float, float]:
    """``(<exp(2 l_z)>, <exp(-2 l_z)>)``.

    Raises
    ------
    NumericalDomainError
        When a single term ``exp(+-2m) |c_m|**2`` overflows a double.
    """
    out = []
    for sign in (1, -1):
        logval, expo, ms = _log_exp_2lz(state, sign)
        if logval >= _EXP_LIMIT:
            bad = int(ms[np.argmax(expo)])
            raise NumericalDomainError(
                f"<exp({'+' if sign > 0 else '-'}2 l_z)> overflows (term m={bad})")
        out.append(float(np.exp(logval)))
    return out[0], out[1]


# --- quadrature cross-check path -------------------------------------------

def mean_phi_quadrature(state: CircleState, phi0: float,
                        cfg: QuadratureConfig = QuadratureConfig()) -> float:
    a, b = phi0 - np.pi, phi0 + np.pi
    norm = integrate_window(lambda t: density(state, t), a, b, cfg)
    return float(integrate_window(lambda t: t * density(state, t), a, b, cfg) / norm)


def central_moment_quadrature(state: CircleState, n: int, phi0: float,
                              cfg: QuadratureConfig = QuadratureConfig()) -> float:
    a, b = phi0 - np.pi, phi0 + np.pi
    m = mean_phi_quadrature(state, phi0, cfg)
    return float(integrate_window(lambda t: (t - m) ** n * density(state, t), a, b, cfg))


def variance_phi_quadrature(state: CircleState, phi0: float,
                            cfg: QuadratureConfig = QuadratureConfig()) -> float:
    return central_moment_quadrature(state, 2, phi0, cfg)


def covariance_quadrature(state: CircleState, phi0: float,
                          cfg: QuadratureConfig = QuadratureConfig()):
    """``G`` by panel quadrature of ``conj((l_z - L) psi) (phi - M) psi``."""
    from .circle_state import SQRT_TWO_PI, evaluate

    d = _lz_shifted(state)
    ms = state.ms

    def chi(t):
        ph = np.exp(1j * np.multiply.outer(np.remainder(t, TWO_PI), ms))
        return ph @ d / SQRT_TWO_PI

    m = mean_phi_quadrature(state, phi0, cfg)
    G = integrate_window(lambda t: np.conj(chi(t)) * (t - m) * evaluate(state, t),
                         phi0 - np.pi, phi0 + np.pi, cfg)
    return float(G.real), float(G.imag)
