"""Numerical laboratory for defocusing NLS with nonzero background.

Thin re-export of the compiled extension: initial data in the finite-density
class, direct scattering, Painleve II tables, transition-region predictions,
direct spectral evolution, and the comparison/audit pipelines.
"""

from ._nlsbg import *  # noqa: F401,F403
from ._nlsbg import __version__  # noqa: F401
