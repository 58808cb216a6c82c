"""Minimal tori with planar ends from elliptic solitons.

Modules: ``elliptic`` (Weierstrass functions), ``baker`` (Lame Baker
functions and multiplier bases), ``spectral`` (multiplier curves and the
order-zero determinant), ``surfaces`` (spinor families, period problem,
closed-form immersions, meshes), ``verify`` (geometric checks) and ``cli``.
"""
from .elliptic import Lattice, lattice_constants
from .errors import FoundryError
from .tolerances import TOL

__version__ = "0.1.0"

__all__ = ["Lattice", "lattice_constants", "FoundryError", "TOL", "__version__"]
