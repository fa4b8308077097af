"""Numerics for golden-mean Siegel renormalization of quadratic polynomials.

Centers and Siegel parameters of the copy sequence z_m, quadratic-like
restrictions f^p : U -> V, Monte Carlo landing/escaping probabilities,
the Blaschke circle model and scaling tables.
"""
from .ddcomplex import DDComplex, Precision
from .errors import FeigenbenchError
from .numerics import iterate_orbit, newton_root, orbit_jets, orbit_with_derivatives
from .paramsearch import (
    FoundParameter, ParameterCache, cardioid_root, find_center, find_siegel_param, zm_pipeline,
)
from .renorm import QLRestriction, build_restriction, classify_landing, classify_return
from .rotation import GOLDEN, RotationNumber, convergents, renormalization_period
from .siegel import SiegelDisk, renorm_siegel_center, siegel_boundary, siegel_quadratic_param
from .stats import ProbabilityEstimate, blackhole_report, estimate_eta, estimate_xi, wilson_interval

__version__ = "0.1.0"
