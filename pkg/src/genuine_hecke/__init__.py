"""Exact combinatorics of tame genuine principal-series Hecke algebras on covering groups."""

from .root_datum import RootDatum, build_preset
from .quad_cover import QuadraticCoverData, endoscopic_datum
from .tame_arith import TameField
from .cover_torus import GenuineCharacter
from .chi_geometry import ChiGeometry

__all__ = ["RootDatum", "build_preset", "QuadraticCoverData", "endoscopic_datum",
           "TameField", "GenuineCharacter", "ChiGeometry"]
