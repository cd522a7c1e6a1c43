"""Position-uncertainty (delocalization) measures for states on the circle."""

__version__ = "0.1.0"

from .circle_state import (
    CircleState,
    density,
    evaluate,
    make_cat,
    make_coherent,
    make_density_poly,
    make_eigenstate,
    make_fourier,
    make_from_samples,
    make_trig,
    rotate,
    truncate,
)
from .errors import (
    ContractViolationError,
    DegenerateStateError,
    NormalizationError,
    NumericalDomainError,
    ParameterRangeError,
    RingSpreadError,
    SpecParseError,
)
from .measures import (
    MeasureReport,
    RelationReport,
    measure_a,
    measure_b,
    measure_c,
    measure_kr,
    measure_report,
    measure_tilde,
    mean_sq_cov,
    packet_centers,
    relation_report,
)
from .moments import (
    WindowMoments,
    central_moment_phi,
    covariance_lz_phi,
    exp_2lz_moments,
    expectation_exp_ikphi,
    lz_moments,
    mean_phi,
    trig_moments,
    variance_phi,
    window_moments,
)
from .numerics import QuadratureConfig, ScanGrid
from .specs import CATALOG, StateSpec, build_state, load_spec, parse_spec
