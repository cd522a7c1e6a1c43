"""Pure states of a particle on the circle.

A state is stored as a truncated series over the angular-momentum
eigenfunctions::

    psi(phi) = sum_m c_m exp(i m phi) / sqrt(2 pi),   m = m_min .. m_max

which makes every l_z moment and every expectation of exp(i k phi) an
exact finite sum over the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateStateError, NormalizationError, ParameterRangeError

TWO_PI = 2.0 * np.pi
SQRT_TWO_PI = np.sqrt(TWO_PI)

#: global guard on the angular-momentum range of any state
MAX_M = 512
NORM_TOL = 1e-12
#: probability mass that builders of infinite series are allowed to drop
TAIL_TOL = 1e-16


@dataclass(frozen=True, eq=False)
class CircleState:
    """Normalized truncated Fourier series on the circle.

    Parameters
    ----------
    m_min : int
        Angular-momentum index of ``coefficients[0]``.
    coefficients : array_like of complex
        Amplitudes ``c_m`` for ``m = m_min, m_min + 1, ...``.
    label : str, optional
        Free-form name carried into reports.
    """

    m_min: int
    coefficients: np.ndarray
    label: Optional[str] = field(default=None)

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).ravel()
        if c.size == 0 or not np.any(np.abs(c) > 1e-15):
            raise DegenerateStateError("state has no nonzero coefficient")
        if not np.all(np.isfinite(c)):
            raise ParameterRangeError("coefficients must be finite")
        norm = float(np.sum(np.abs(c) ** 2))
        if abs(norm - 1.0) >= NORM_TOL:
            raise NormalizationError(f"sum |c_m|^2 = {norm!r}, expected 1")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "m_min", int(self.m_min))

    @property
    def m_max(self) -> int:
        return self.m_min + self.coefficients.size - 1

    @property
    def ms(self) -> np.ndarray:
        """Angular-momentum index of every stored coefficient."""
        return np.arange(self.m_min, self.m_max + 1)

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))

    def coefficient(self, m: int) -> complex:
        i = m - self.m_min
        if 0 <= i < self.coefficients.size:
            return complex(self.coefficients[i])
        return 0j

    @cached_property
    def density_harmonics(self) -> np.ndarray:
        """``P_k = sum_m conj(c_m) c_{m+k}`` for ``k = 0 .. m_max - m_min``.

        The density is ``p(phi) = (1/2pi) sum_k P_k exp(i k phi)`` with
        ``P_{-k} = conj(P_k)``.
        """
        c = self.coefficients
        w = c.size
        return np.array([np.vdot(c[: w - k], c[k:]) for k in range(w)])

    def __call__(self, phi):
        return evaluate(self, phi)

    def __repr__(self):
        return (f"CircleState(label={self.label!r}, m_min={self.m_min}, "
                f"m_max={self.m_max})")


def _from_raw(m_min: int, coeffs, label=None, trim: float = 0.0) -> CircleState:
    """Normalize raw amplitudes and drop negligible edge terms."""
    c = np.asarray(coeffs, dtype=complex)
    if trim > 0.0 and c.size:
        scale = np.max(np.abs(c))
        c = np.where(np.abs(c) > trim * scale, c, 0.0)
    nz = np.flatnonzero(np.abs(c) > 0)
    if nz.size == 0:
        raise DegenerateStateError("all coefficients vanish")
    c = c[nz[0]: nz[-1] + 1]
    m_min = m_min + int(nz[0])
    norm = np.sqrt(np.sum(np.abs(c) ** 2))
    if norm < NORM_TOL:
        raise DegenerateStateError(f"state norm {norm:.3e} is below {NORM_TOL}")
    if max(abs(m_min), abs(m_min + c.size - 1)) > MAX_M:
        raise ParameterRangeError(f"|m| exceeds the cap of {MAX_M}")
    return CircleState(m_min, c / norm, label)


def make_eigenstate(m: int, label: Optional[str] = None) -> CircleState:
    """Eigenstate ``exp(i m phi)/sqrt(2pi)`` of l_z, with uniform density."""
    if abs(int(m)) > MAX_M:
        raise ParameterRangeError(f"|m| = {abs(m)} exceeds the cap of {MAX_M}")
    return CircleState(int(m), [1.0], label or f"eigenstate(m={m})")


def make_trig(harmonic: int, phase: str = "sin", label: Optional[str] = None) -> CircleState:
    """``sin(k phi)/sqrt(pi)`` or ``cos(k phi)/sqrt(pi)``."""
    k = int(harmonic)
    if k < 1:
        raise ParameterRangeError(f"harmonic must be >= 1, got {harmonic}")
    if k > MAX_M:
        raise ParameterRangeError(f"harmonic {k} exceeds the cap of {MAX_M}")
    c = np.zeros(2 * k + 1, dtype=complex)
    s = 1.0 / np.sqrt(2.0)
    if phase == "sin":
        c[0], c[-1] = 1j * s, -1j * s
    elif phase == "cos":
        c[0], c[-1] = s, s
    else:
        raise ParameterRangeError(f"phase must be 'sin' or 'cos', got {phase!r}")
    return CircleState(-k, c, label or f"{phase}({k}phi)")


def _coherent_raw(l: float, theta: float, mmax: Optional[int]):
    if not np.isfinite(l) or not np.isfinite(theta):
        raise ParameterRangeError("l and theta must be finite")
    if abs(l) > 10.0:
        raise ParameterRangeError(f"|l| = {abs(l)} exceeds 10")
    # |c_m|^2 ~ exp(-(m + l)^2): a Gaussian in m centred on -l
    centre = int(round(-l))
    wide = np.arange(centre - 40, centre + 41)
    logmod = -wide * l - 0.5 * wide.astype(float) ** 2
    logmod -= logmod.max()
    prob = np.exp(2.0 * logmod)
    prob /= prob.sum()
    for half in range(1, 41):
        keep = np.abs(wide - centre) <= half
        if prob[~keep].sum() < TAIL_TOL:
            break
    ms = wide[keep]
    if mmax is not None:
        ms = ms[np.abs(ms) <= mmax]
        if ms.size == 0:
            raise DegenerateStateError(f"no coefficients survive |m| <= {mmax}")
    ms = np.arange(ms.min(), ms.max() + 1)
    logmod = -ms * l - 0.5 * ms.astype(float) ** 2
    c = np.exp(logmod - logmod.max() - 1j * ms * theta)
    return int(ms[0]), ms, c


def make_coherent(l: float, theta: float = 0.0, mmax: Optional[int] = None,
                  label: Optional[str] = None) -> CircleState:
    """Coherent state on the circle with ``xi = exp(l + i theta)``.

    Eigenstate of ``Z = exp(-l_z + 1/2) U`` with ``U = exp(i phi)``. The
    coefficients are ``c_m ~ xi**(-m) exp(-m**2 / 2)``, so the density
    peaks at ``phi = theta`` and ``<l_z>`` is close to ``-l``. The series
    is truncated once the dropped probability falls below 1e-16.
    """
    m_min, _, c = _coherent_raw(float(l), float(theta), mmax)
    return _from_raw(m_min, c, label or f"coherent(l={l:g}, theta={theta:g})")


def make_cat(l: float, theta: float = 0.0, mmax: Optional[int] = None,
             label: Optional[str] = None) -> CircleState:
    """Normalized difference of the coherent states at ``xi`` and ``-xi``.

    Replacing ``xi`` by ``-xi`` flips the sign of every odd-m term, so the
    difference keeps only odd m (with doubled amplitude).
    """
    m_min, ms, c = _coherent_raw(float(l), float(theta), mmax)
    c = np.where(ms % 2 != 0, 2.0 * c, 0.0)
    if np.sqrt(np.sum(np.abs(c) ** 2)) < NORM_TOL:
        raise DegenerateStateError("|xi> - |-xi> cancels to zero")
    return _from_raw(m_min, c, label or f"cat(l={l:g}, theta={theta:g})")


def make_density_poly(offset: float, label: Optional[str] = None) -> CircleState:
    """Real state ``(offset + sin(phi)**2)**2 / sqrt(N)``, expanded exactly."""
    a = float(offset)
    if not a > 0.0 or not np.isfinite(a):
        raise ParameterRangeError(f"offset must be a positive number, got {offset}")
    # a + sin^2 = (a + 1/2) - (z^2 + z^-2)/4 with z = exp(i phi)
    b = a + 0.5
    c = np.zeros(9)
    c[4] = b * b + 1.0 / 8.0
    c[2] = c[6] = -b / 2.0
    c[0] = c[8] = 1.0 / 16.0
    return _from_raw(-4, c, label or f"density_poly(offset={a:g})")


def make_fourier(triples: Sequence[Sequence[float]], normalize: bool = False,
                 label: Optional[str] = None) -> CircleState:
    """State from explicit ``(m, Re c_m, Im c_m)`` triples."""
    rows = [tuple(t) for t in triples]
    if not rows:
        raise DegenerateStateError("no coefficients given")
    ms = [int(r[0]) for r in rows]
    if len(set(ms)) != len(ms):
        raise ParameterRangeError("fourier coefficients must have distinct m")
    m_min = min(ms)
    c = np.zeros(max(ms) - m_min + 1, dtype=complex)
    for m, re, im in rows:
        c[int(m) - m_min] = complex(float(re), float(im))
    if not normalize:
        norm = float(np.sum(np.abs(c) ** 2))
        if abs(norm - 1.0) >= NORM_TOL:
            raise NormalizationError(
                f"sum |c_m|^2 = {norm!r}; pass normalize=True to rescale")
        return CircleState(m_min, c, label)
    return _from_raw(m_min, c, label)


def make_from_samples(values, origin: float = 0.0, label: Optional[str] = None,
                      rel_cutoff: float = 1e-13) -> CircleState:
    """Fit a state to wavefunction samples on a uniform grid.

    ``values[j]`` is taken as psi at ``origin + 2 pi j / N``. Coefficients
    are obtained by FFT; those below ``rel_cutoff`` times the largest one
    are treated as round-off and dropped.
    """
    psi = np.asarray(values, dtype=complex).ravel()
    n = psi.size
    if n < 4:
        raise ParameterRangeError(f"need at least 4 samples, got {n}")
    if not np.any(np.abs(psi) > 0):
        raise DegenerateStateError("all samples are zero")
    spec = np.fft.fftshift(np.fft.fft(psi))
    ms = np.fft.fftshift(np.fft.fftfreq(n, 1.0 / n)).astype(int)
    c = SQRT_TWO_PI / n * spec * np.exp(-1j * ms * origin)
    return _from_raw(int(ms[0]), c, label or f"samples(n={n})", trim=rel_cutoff)


def evaluate(state: CircleState, phi):
    """Wavefunction ``psi(phi)``; ``phi`` may be an array.

    Angles are reduced modulo 2 pi before summation.
    """
    phi = np.remainder(np.asarray(phi, dtype=float), TWO_PI)
    ph = np.exp(1j * np.multiply.outer(phi, state.ms))
    return ph @ state.coefficients / SQRT_TWO_PI


def density(state: CircleState, phi):
    """Probability density ``|psi(phi)|**2``."""
    return np.abs(evaluate(state, phi)) ** 2


def rotate(state: CircleState, angle: float) -> CircleState:
    """Shift the density by ``angle``: ``p(phi) -> p(phi - angle)``."""
    c = state.coefficients * np.exp(-1j * state.ms * angle)
    c = c / np.sqrt(np.sum(np.abs(c) ** 2))
    return CircleState(state.m_min, c, state.label)


def truncate(state: CircleState, mmax: int) -> CircleState:
    """Drop all terms with ``|m| > mmax`` and renormalize."""
    keep = np.abs(state.ms) <= mmax
    if not np.any(keep):
        raise DegenerateStateError(f"no coefficients survive |m| <= {mmax}")
    c = np.where(keep, state.coefficients, 0.0)
    return _from_raw(state.m_min, c, state.label)


def fourier_triples(state: CircleState):
    """``[[m, Re c, Im c], ...]`` for every nonzero coefficient."""
    return [[int(m), float(c.real), float(c.imag)]
            for m, c in zip(state.ms, state.coefficients) if c != 0]
