"""Exterior Steklov eigenvalue solver for planar domains.

Boundary-integral (Nystrom) and conformal-inversion solvers for the
exterior Steklov spectrum, closed-form radial oracles, logarithmic
capacity, curvature-based lower bounds, and Weyl-law asymptotics.
"""

__version__ = "0.1.0"

from . import (  # noqa: F401
    asymptotics,
    bie2d,
    bounds,
    errors,
    geometry,
    oracle_radial,
    specfun,
)
