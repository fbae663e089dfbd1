"""Exact computations with modular tensor categories and finite-dimensional Hopf algebras.

Submodules:

* :mod:`mtckit.cyclotomic`    exact arithmetic in cyclotomic fields
* :mod:`mtckit.modular_data`  (S, T) data, validation and generators
* :mod:`mtckit.fusion`        Verlinde formula and fusion rings
* :mod:`mtckit.invariants`    enumeration of modular invariants
* :mod:`mtckit.hopf`          Hopf algebras by structure constants
* :mod:`mtckit.coend`         the coend of H-Mod and its SL(2,Z) action
"""

from .cyclotomic import Cyclotomic, zeta
from .errors import MtcError, ValidationReport
from .modular_data import ModularData, gen_named, gen_pointed, gen_sl2, validate

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "zeta",
    "MtcError",
    "ValidationReport",
    "ModularData",
    "gen_sl2",
    "gen_pointed",
    "gen_named",
    "validate",
]
