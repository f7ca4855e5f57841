"""Symplecticity checks and enumeration for small covers over simplicial 3-spheres."""

from .charmap import CharacteristicMap, dj_canonical, is_characteristic, is_orientable
from .gf2 import Gf2Matrix
from .obstructions import symplectic_verdict
from .report import ObstructionReport, Verdict
from .simplicial import SimplicialComplex

__version__ = "0.1.0"
