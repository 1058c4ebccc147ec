"""Finite-level computations with the Euler system of cyclotomic units.

Instantiates, at a fixed odd prime p, layer m and precision p^N, the
cyclotomic units and their norm relations, Kolyvagin derivative classes
evaluated through residue-field shadows, the group-ring-valued valuation
and reciprocity maps, higher Fitting ideals over Z/p^N group rings, and
the finite-level higher cyclotomic ideals, together with the class-group
structure they recover at the bottom layer.
"""

__version__ = "0.1.0"

from .cyclotomic import CycElt, LevelParams, cyc_unit, galois_apply, relative_norm
from .kernels import IMPL as KERNEL_IMPL
from .residues import EmbeddingFixture

__all__ = [
    "CycElt",
    "LevelParams",
    "cyc_unit",
    "galois_apply",
    "relative_norm",
    "EmbeddingFixture",
    "KERNEL_IMPL",
    "__version__",
]
