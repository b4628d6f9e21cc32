"""Exact verification engine for the eight quantized Painleve equations.

Subpackage map:
  core        exact rationals, algebraic scalars, truncated series, linear solve
  weyl        noncommutative Weyl algebra [p, q] = eps and Heisenberg jets
  catalog     the eight Hamiltonians, their jet identities and bilinear forms
  symmetry    affine Weyl / folding actions on roots and on (q, p, t)
  limits      coalescence edges between the systems
  nekrasov    partition sums, structure constants, double-gamma numerics
  modealg     Fourier-mode algebra over translated partition functions
  strongsolve strong-coupling expansions: coefficient solving, constant fixing
  blowup      floating-point bilinear checks on the half-integer lattices
  driver      named checks, cache management, command line entry
"""

from .core import (
    AlgNum,
    GuardConfig,
    GuardExhausted,
    I_UNIT,
    INF,
    InconsistentOverdetermined,
    ParamPoint,
    Rat,
    SQRT2,
    SQRT3,
    SingularSystem,
    SymPoly,
    TSeries,
    TimeKind,
    fit_polynomial,
    rat,
    sample_params,
    series_combine,
    series_dlog,
    solve_exact,
)

__all__ = [
    "AlgNum",
    "GuardConfig",
    "GuardExhausted",
    "I_UNIT",
    "INF",
    "InconsistentOverdetermined",
    "ParamPoint",
    "Rat",
    "SQRT2",
    "SQRT3",
    "SingularSystem",
    "SymPoly",
    "TSeries",
    "TimeKind",
    "fit_polynomial",
    "rat",
    "sample_params",
    "series_combine",
    "series_dlog",
    "solve_exact",
]

__version__ = "0.1.0"
