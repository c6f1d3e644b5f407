"""High-precision integrals against stationary measures of iterated function systems.

The integral of an analytic ``g`` is approximated from periodic-orbit data
through the power-series coefficients of a Fredholm determinant; the error
decays like ``exp(-c k^2)`` in the orbit length ``k``.
"""
from .applications import (
    MomentVector,
    WassersteinResult,
    integrate,
    integrate_many,
    integrate_piecewise,
    iterate_oracle,
    lyapunov,
    moments,
    moments_oracle_affine,
    wasserstein,
    wasserstein_oracle_affine,
)
from .determinant import CoefficientTable, EstimateSeries, coeffs_direct, coeffs_recursive, estimate
from .maps import Affine, Moebius, Polynomial, SineAffine, eval_map, eval_map_derivative
from .numeric import PrecisionContext, make_context, render
from .observables import CylinderComposed, Lyapunov, eval_observable
from .orbits import CyclicClass, PeriodicOrbit, cyclic_classes, fixed_point, orbit_data, rotate
from .system import (
    ConstantWeights,
    FunctionWeights,
    IFSConfig,
    ValidationReport,
    check_contraction,
    check_nonoverlap,
    check_weights,
    validate,
)
from .traces import TraceTable, compute_traces, trace_t, trace_tau

__version__ = "0.1.0"
