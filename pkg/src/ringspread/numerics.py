"""Quadrature, periodic minimization and fixed-point search on the circle."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, NamedTuple, Optional

import numpy as np
from scipy import optimize

from .errors import ContractViolationError, NumericalDomainError, ParameterRangeError

TWO_PI = 2.0 * np.pi
INV_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class QuadratureConfig:
    panels: int = 64
    points_per_panel: int = 16
    abs_tol: float = 1e-10

    def __post_init__(self):
        if self.panels < 1:
            raise ParameterRangeError("panels must be >= 1")
        if self.points_per_panel < 2:
            raise ParameterRangeError("points_per_panel must be >= 2")
        if not self.abs_tol > 0:
            raise ParameterRangeError("abs_tol must be positive")


@dataclass(frozen=True)
class ScanGrid:
    """``n`` equally spaced reference points covering ``[origin, origin + 2pi)``."""

    n: int = 720
    origin: float = -np.pi

    def __post_init__(self):
        if self.n < 8:
            raise ParameterRangeError(f"scan grid needs n >= 8, got {self.n}")

    @property
    def step(self) -> float:
        return TWO_PI / self.n

    @property
    def points(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.n)

    def refined(self, n_min: int) -> "ScanGrid":
        if n_min <= self.n:
            return self
        return ScanGrid(int(n_min), self.origin)


@lru_cache(maxsize=32)
def _gauss_legendre(order: int):
    return np.polynomial.legendre.leggauss(order)


def _panel_rule(f, a, b, panels, order):
    x, w = _gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    try:
        vals = np.asarray(f(nodes))
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != nodes.shape:
        vals = np.array([f(t) for t in nodes])
    if not np.all(np.isfinite(vals)):
        raise NumericalDomainError("integrand returned a non-finite value")
    return np.sum(weights * vals)


def integrate_window(f: Callable, a: float, b: float,
                     cfg: QuadratureConfig = QuadratureConfig()):
    """Composite Gauss-Legendre integral of ``f`` over ``[a, b]``.

    ``f`` is called with an array of nodes and may return real or complex
    values. The panel count is doubled (up to 16x) until two successive
    estimates agree to ``cfg.abs_tol``.

    Raises
    ------
    NumericalDomainError
        If ``f`` produces a non-finite value or the tolerance is not met.
    """
    if not b > a:
        raise ParameterRangeError("integrate_window needs b > a")
    panels = cfg.panels
    est = _panel_rule(f, a, b, panels, cfg.points_per_panel)
    for _ in range(4):
        panels *= 2
        finer = _panel_rule(f, a, b, panels, cfg.points_per_panel)
        if abs(finer - est) < cfg.abs_tol:
            return finer
        est = finer
    raise NumericalDomainError(
        f"quadrature did not reach abs_tol={cfg.abs_tol} with {panels} panels")


def periodic_mean(values) -> float:
    """Trapezoid average of one period of samples (spectrally accurate)."""
    return float(np.mean(values))


def _sample(g, xs):
    try:
        vals = np.asarray(g(xs), dtype=float)
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != xs.shape:
        vals = np.array([float(g(x)) for x in xs])
    return vals


def wrap_angle(x):
    """Map angles into ``[-pi, pi)``."""
    y = np.remainder(np.asarray(x, dtype=float) + np.pi, TWO_PI) - np.pi
    return float(y) if np.ndim(y) == 0 else y


def golden_section(g, a, b, c, fb=None, xtol=1e-12, maxiter=200):
    """Golden-section search inside the bracket ``a < b < c``.

    Ties with the bracket ends are tolerated (plateaus just shrink onto
    ``b``), which ``scipy.optimize.golden`` refuses.
    """
    if fb is None:
        fb = g(b)
    lo, hi = a, c
    x1 = hi - INV_GOLDEN * (hi - lo)
    x2 = lo + INV_GOLDEN * (hi - lo)
    f1, f2 = g(x1), g(x2)
    for _ in range(maxiter):
        if hi - lo <= xtol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_GOLDEN * (hi - lo)
            f1 = g(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_GOLDEN * (hi - lo)
            f2 = g(x2)
    x, fx = (x1, f1) if f1 <= f2 else (x2, f2)
    if fb < fx:
        return b, fb
    return x, fx


def _derivative_root(dg, a, m, b, xtol):
    da, dm, db = float(dg(a)), float(dg(m)), float(dg(b))
    if dm == 0.0:
        return m
    if da < 0.0 < dm:
        return optimize.bisect(lambda t: float(dg(t)), a, m, xtol=xtol, maxiter=200)
    if dm < 0.0 < db:
        return optimize.bisect(lambda t: float(dg(t)), m, b, xtol=xtol, maxiter=200)
    return None


class PeriodicMinimum(NamedTuple):
    argmin: float
    minimum: float
    minima: List[float]
    degenerate: bool


def _dedupe_angles(xs, tol):
    out: List[float] = []
    for x in sorted(wrap_angle(x) for x in xs):
        if not any(abs(wrap_angle(x - y)) < tol for y in out):
            out.append(x)
    return out


def minimize_periodic(g: Callable, grid: ScanGrid = ScanGrid(),
                      refine_tol: float = 1e-12,
                      degeneracy_tol: float = 1e-9,
                      dg: Optional[Callable] = None) -> PeriodicMinimum:
    """Global minimum of a 2pi-periodic scalar function.

    The function is sampled on ``grid``; every discrete local minimum is
    refined by golden-section search in its neighbouring bracket. All
    refined minima within ``degeneracy_tol * max(1, |g_min|)`` of the
    global one are returned in ``minima`` (wrapped into ``[-pi, pi)``).
    A function that is constant to that tolerance on the whole grid is
    flagged ``degenerate`` and reported with an empty ``minima`` list.

    ``g`` may be vectorized; it is first called on the full grid array.
    If the derivative ``dg`` is given, brackets where it changes sign from
    negative to positive are refined by bisection on ``dg`` instead, which
    locates flat (e.g. quartic) minima far more precisely than comparing
    function values can.
    """
    xs = grid.points
    g0 = float(g(grid.origin))
    g1 = float(g(grid.origin + TWO_PI))
    if not abs(g0 - g1) <= 1e-8 * max(1.0, abs(g0)):
        raise ContractViolationError(
            f"function is not 2pi-periodic: g(x0)={g0!r}, g(x0+2pi)={g1!r}")
    vals = _sample(g, xs)
    if not np.all(np.isfinite(vals)):
        raise NumericalDomainError("objective returned a non-finite value")
    gmin = float(vals.min())
    tie = degeneracy_tol * max(1.0, abs(gmin))
    if vals.max() - gmin <= tie:
        i = int(np.argmin(vals))
        return PeriodicMinimum(wrap_angle(xs[i]), gmin, [], True)

    left, right = np.roll(vals, 1), np.roll(vals, -1)
    cand = np.flatnonzero((vals <= left) & (vals <= right))
    h = grid.step
    found = []
    for i in cand:
        a, b = xs[i] - h, xs[i] + h
        if dg is not None:
            x = _derivative_root(dg, a, xs[i], b, refine_tol)
            if x is not None:
                fx = float(g(x))
                if fx <= vals[i]:
                    found.append((float(x), fx))
                    continue
        x, fx = golden_section(g, a, xs[i], b, fb=float(vals[i]), xtol=refine_tol)
        found.append((float(x), float(fx)))
    best = min(f for _, f in found)
    tie = degeneracy_tol * max(1.0, abs(best))
    minima = _dedupe_angles([x for x, f in found if f - best <= tie], 1e-7)
    argmin = min(found, key=lambda t: t[1])[0]
    return PeriodicMinimum(wrap_angle(argmin), best, minima, False)


class FixedPoints(NamedTuple):
    roots: List[float]
    identity: bool


def fixed_points(h: Callable, grid: ScanGrid = ScanGrid(), xtol: float = 1e-12,
                 identity_tol: float = 1e-9) -> FixedPoints:
    """Solutions of ``h(x) = x`` in one 2pi interval.

    ``h`` must satisfy ``h(x + 2pi) = h(x) + 2pi`` so that ``h(x) - x`` is
    periodic. Roots are bracketed by sign changes on the grid and refined
    by bisection. If ``|h(x) - x| < identity_tol`` on every node the
    identity flag is set and no roots are listed.
    """
    xs = grid.points
    hv = _sample(h, xs)
    r = hv - xs
    if np.all(np.abs(r) < identity_tol):
        return FixedPoints([], True)

    def resid(x):
        return float(h(x)) - x

    roots = []
    rr = np.append(r, resid(grid.origin + TWO_PI))
    xx = np.append(xs, grid.origin + TWO_PI)
    for i in range(grid.n):
        ra, rb = rr[i], rr[i + 1]
        if ra == 0.0:
            roots.append(xx[i])
        elif ra * rb < 0.0:
            roots.append(optimize.bisect(resid, xx[i], xx[i + 1], xtol=xtol,
                                         maxiter=200))
    return FixedPoints(_dedupe_angles(roots, 1e-8), False)
