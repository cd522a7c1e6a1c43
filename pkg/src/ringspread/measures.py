"""Delocalization measures on the circle and the uncertainty relations they obey.

Three window-free measures are built from the window variance
``D(phi0)`` of :func:`ringspread.moments.variance_phi`:

* ``a``: mean of ``D`` over one period,
* ``b``: minimum of ``D`` over one period,
* ``c``: ``D`` at the packet centre(s), the fixed points of
  ``mean_phi(phi0) = phi0`` that give the smallest ``D``.

For comparison the module also evaluates the centroid-based measure
``1 - |<exp(i phi)>|**2`` and the logarithmic measures built from
``<exp(2i phi)>`` and ``<exp(+-2 l_z)>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .circle_state import CircleState
from .moments import (
    covariance_lz_phi,
    exp_2lz_moments,
    expectation_exp_ikphi,
    lz_moments,
    mean_phi,
    trig_moments,
    variance_phi,
    variance_phi_derivative,
)
from .numerics import ScanGrid, fixed_points, minimize_periodic, wrap_angle

#: |<U^2>| below this makes the logarithmic angle measure infinite
KR_ZERO = 1e-15
#: relative tolerance for ties between minima / centres
TIE_TOL = 1e-9
#: a relation counts as satisfied when lhs - rhs >= -SLACK_TOL
SLACK_TOL = 1e-9

UNIFORM_VARIANCE = math.pi ** 2 / 3.0


def _grid_for(state: CircleState, grid: ScanGrid) -> ScanGrid:
    # D(phi0) has harmonics up to 2 (m_max - m_min); the trapezoid rule on n
    # points is exact below harmonic n
    return grid.refined(2 * (state.coefficients.size - 1) + 2)


def measure_tilde(state: CircleState) -> float:
    """``1 - |<exp(i phi)>|**2``, i.e. ``Var cos + Var sin``."""
    return 1.0 - abs(expectation_exp_ikphi(state, 1)) ** 2


def measure_kr(state: CircleState) -> Tuple[float, float]:
    """Logarithmic angle and angular-momentum uncertainties.

    Returns
    -------
    kr_phi : float
        ``-1/4 ln |<exp(2i phi)>|**2``; ``inf`` when ``|<exp(2i phi)>|`` is
        below ``KR_ZERO``.
    kr_lz : float
        ``1/4 ln(<exp(-2 l_z)> <exp(2 l_z)>)``.
    """
    u2 = abs(expectation_exp_ikphi(state, 2))
    kr_phi = math.inf if u2 < KR_ZERO else -0.5 * math.log(u2)
    plus, minus = exp_2lz_moments(state)
    kr_lz = 0.25 * (math.log(plus) + math.log(minus))
    return kr_phi, kr_lz


def measure_a(state: CircleState, grid: ScanGrid = ScanGrid()) -> float:
    """Average of the window variance over one period (trapezoid rule)."""
    g = _grid_for(state, grid)
    return float(np.mean(variance_phi(state, g.points)))


@dataclass(frozen=True)
class MinimumResult:
    value: float
    argmins: List[float]
    degenerate: bool


def measure_b(state: CircleState, grid: ScanGrid = ScanGrid()) -> MinimumResult:
    """Global minimum of the window variance over one period.

    ``argmins`` lists every tied minimizer in ``[-pi, pi)``. A constant
    window variance (uniform density) is reported as ``degenerate`` with no
    argmins.
    """
    res = minimize_periodic(lambda x: variance_phi(state, x), grid,
                            degeneracy_tol=TIE_TOL,
                            dg=lambda x: variance_phi_derivative(state, x))
    return MinimumResult(res.minimum, res.minima, res.degenerate)


@dataclass(frozen=True)
class PacketCenters:
    """Solutions of ``mean_phi(phi0) = phi0``.

    ``all_points`` is set when every point of the circle solves it
    (uniform density). ``centroid_angle`` is the polar angle of
    ``(<cos>, <sin>)`` when that point is off the origin, and
    ``centroid_is_center`` records whether it appears among ``centers``.
    """

    centers: List[float]
    all_points: bool
    centroid_angle: Optional[float] = None
    centroid_is_center: Optional[bool] = None


def packet_centers(state: CircleState, grid: ScanGrid = ScanGrid()) -> PacketCenters:
    fp = fixed_points(lambda x: mean_phi(state, x), grid)
    e1 = expectation_exp_ikphi(state, 1)
    if abs(e1) <= 1e-9:
        return PacketCenters(fp.roots, fp.identity)
    angle = wrap_angle(math.atan2(e1.imag, e1.real))
    hit = fp.identity or any(abs(wrap_angle(angle - c)) < 1e-6 for c in fp.roots)
    return PacketCenters(fp.roots, fp.identity, angle, hit)


@dataclass(frozen=True)
class CenterResult:
    value: float
    selected: List[float]
    all_points: bool
    centers: List[float] = field(default_factory=list)
    center_variances: List[float] = field(default_factory=list)


def measure_c(state: CircleState, grid: ScanGrid = ScanGrid(),
              centers: Optional[PacketCenters] = None) -> CenterResult:
    """Window variance at the packet centre(s).

    When several fixed points exist, those with the smallest window
    variance are selected (all of them if they tie).
    """
    pc = centers if centers is not None else packet_centers(state, grid)
    if pc.all_points:
        return CenterResult(float(variance_phi(state, 0.0)), [], True)
    if not pc.centers:
        # no sign change found; fall back on the variance minimizers
        b = measure_b(state, grid)
        return CenterResult(b.value, b.argmins, False)
    d = [float(variance_phi(state, c)) for c in pc.centers]
    best = min(d)
    tie = TIE_TOL * max(1.0, abs(best))
    sel = [c for c, v in zip(pc.centers, d) if v - best <= tie]
    return CenterResult(best, sel, False, list(pc.centers), d)


def mean_sq_cov(state: CircleState, grid: ScanGrid = ScanGrid()) -> Tuple[float, float]:
    """Period averages of ``(Re G)**2`` and ``(Im G)**2``."""
    g = _grid_for(state, grid)
    re, im = covariance_lz_phi(state, g.points)
    return float(np.mean(re ** 2)), float(np.mean(im ** 2))


@dataclass(frozen=True)
class MeasureReport:
    tilde_sq: float
    kr_phi: float
    kr_lz: float
    a_measure: float
    b_measure: float
    b_argmins: List[float]
    b_degenerate: bool
    c_measure: float
    c_selected: List[float]
    centers: List[float]
    all_points: bool
    lz_mean: float
    lz_variance: float
    mean_sq_cov: float
    mean_sq_img: float


def measure_report(state: CircleState, grid: ScanGrid = ScanGrid()) -> MeasureReport:
    kr_phi, kr_lz = measure_kr(state)
    b = measure_b(state, grid)
    pc = packet_centers(state, grid)
    c = measure_c(state, grid, pc)
    cov_sq, img_sq = mean_sq_cov(state, grid)
    lz_mean, lz_var = lz_moments(state)
    return MeasureReport(
        tilde_sq=measure_tilde(state),
        kr_phi=kr_phi,
        kr_lz=kr_lz,
        a_measure=measure_a(state, grid),
        b_measure=b.value,
        b_argmins=b.argmins,
        b_degenerate=b.degenerate,
        c_measure=c.value,
        c_selected=c.selected,
        centers=pc.centers,
        all_points=pc.all_points,
        lz_mean=lz_mean,
        lz_variance=lz_var,
        mean_sq_cov=cov_sq,
        mean_sq_img=img_sq,
    )


@dataclass(frozen=True)
class RelationReport:
    relation: str
    lhs: float
    rhs: float
    phi0: Optional[float] = None

    @property
    def slack(self) -> float:
        if math.isinf(self.lhs) and not math.isinf(self.rhs):
            return math.inf
        return self.lhs - self.rhs

    @property
    def satisfied(self) -> bool:
        return self.slack >= -SLACK_TOL


def relation_report(state: CircleState, grid: ScanGrid = ScanGrid(),
                    phi0_samples: Sequence[float] = (),
                    center_rule: str = "selected",
                    report: Optional[MeasureReport] = None) -> List[RelationReport]:
    """Evaluate every uncertainty relation for ``state``.

    Relations (``lhs >= rhs``):

    ``nieto_sin``      ``Var l_z * Var sin >= <cos>**2 / 4``
    ``nieto_cos``      ``Var l_z * Var cos >= <sin>**2 / 4``
    ``tilde_product``  ``Var l_z * tilde >= (<cos>**2 + <sin>**2) / 4``
    ``schrodinger_window``  ``D Var l_z - (Re G)**2 >= (Im G)**2`` per ``phi0``
    ``schrodinger_a`` / ``schrodinger_b``  the same with period-averaged
                       quantities / quantities at the variance minimizer
    ``kr_sum``         ``kr_lz + kr_phi >= 1``
    ``sum_a``, ``sum_b``, ``sum_c``  ``Var l_z + measure >= 2 |Im G|`` with
                       ``|Im G|`` taken as the rms average, at the variance
                       minimizer and at the packet centre respectively

    ``center_rule`` picks the Im G used by ``sum_c`` when several centres
    are selected: ``"selected"`` uses the first, ``"mean"`` averages
    ``|Im G|`` over all of them.
    """
    if center_rule not in ("selected", "mean"):
        raise ValueError(f"center_rule must be 'selected' or 'mean', got {center_rule!r}")
    rep = report if report is not None else measure_report(state, grid)
    mean_cos, mean_sin, var_cos, var_sin = trig_moments(state)
    dlz = rep.lz_variance
    out = [
        RelationReport("nieto_sin", dlz * var_sin, 0.25 * mean_cos ** 2),
        RelationReport("nieto_cos", dlz * var_cos, 0.25 * mean_sin ** 2),
        RelationReport("tilde_product", dlz * rep.tilde_sq,
                       0.25 * (mean_cos ** 2 + mean_sin ** 2)),
    ]
    for x in phi0_samples:
        re, im = covariance_lz_phi(state, x)
        d = float(variance_phi(state, x))
        out.append(RelationReport("schrodinger_window", d * dlz - float(re) ** 2,
                                  float(im) ** 2, phi0=float(x)))

    out.append(RelationReport("schrodinger_a", rep.a_measure * dlz - rep.mean_sq_cov,
                              rep.mean_sq_img))
    x_b = rep.b_argmins[0] if rep.b_argmins else 0.0
    re_b, im_b = (float(v) for v in covariance_lz_phi(state, x_b))
    out.append(RelationReport("schrodinger_b", rep.b_measure * dlz - re_b ** 2,
                              im_b ** 2, phi0=x_b))
    out.append(RelationReport("kr_sum", rep.kr_lz + rep.kr_phi, 1.0))

    out.append(RelationReport("sum_a", dlz + rep.a_measure,
                              2.0 * math.sqrt(rep.mean_sq_img)))
    out.append(RelationReport("sum_b", dlz + rep.b_measure, 2.0 * abs(im_b), phi0=x_b))
    if rep.all_points or not rep.c_selected:
        centres = [0.0]
    elif center_rule == "selected":
        centres = rep.c_selected[:1]
    else:
        centres = rep.c_selected
    im_c = float(np.mean(np.abs(covariance_lz_phi(state, np.array(centres))[1])))
    out.append(RelationReport("sum_c", dlz + rep.c_measure, 2.0 * im_c,
                              phi0=centres[0] if len(centres) == 1 else None))
    return out
