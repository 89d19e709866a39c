"""Exact Hochschild, cyclic, dihedral and reflexive homology of involutive dgas."""

from .fields import QQ, PrimeField, field_from_token
from .dga import InvolutiveDGA, parse, load, validate, preset, preset_from_token
from .cyclicbar import BarComplex, hochschild_window, identity_suite
from .complexes import ComplexWindow, BettiTable, homology
from .equivariant import (fixed_cyclic_window, fixed_dihedral_window, fixed_reflexive_window,
                          orbit_cyclic_window, orbit_dihedral_window,
                          induced_involution_on_hc_minus)
from .spectral import e1_page, e2_page

__version__ = "0.1.0"
