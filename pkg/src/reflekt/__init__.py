"""reflekt: exact invariant theory of finite complex reflection groups.

Submodules map onto the functional areas:

  exact    cyclotomic scalars, polynomials/series in T, multivariate polynomials
  groups   Shephard-Todd constructors, enumeration, reflections, classes, degrees
  chars    exact character tables (Burnside-Dixon) and local restriction data
  fake     fake degrees, graded characters and the identity verifiers
  minmat   minimal equivariant polynomial matrices
  kz       numerical monodromy of the KZ connection
  cli      command-line front end with JSON output and caching
"""

ALGORITHM_VERSION = "reflekt-0.1.0/alg1"

from .exact import CycNum, PolyT, SeriesT, MultiPoly  # noqa: F401,E402
