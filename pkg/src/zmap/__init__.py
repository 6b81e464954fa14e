"""Numerical evaluation of the discrete conformal map Z^a.

Three independent routes are implemented and cross-validated:

* a stabilized scheme that solves the discrete Painleve II separatrix as a
  two-point boundary value problem and recurses outward from the diagonal,
* the naive forward evolution of the defining lattice equations (unstable
  in double precision, exact as a high-precision oracle),
* a Riemann-Hilbert route via a Fredholm integral equation of the second
  kind, discretized by a least-squares Nystrom method with moment
  conditions, plus a Laurent-coefficient spectral solver for the circle
  model problem.
"""

__version__ = "0.1.0"

from . import core, evolution, painleve, rhp, spectral  # noqa: F401
from .errors import ZmapError  # noqa: F401
