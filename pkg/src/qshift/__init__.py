"""Exact computations with quasi-derivations and shift operators on U(g).

Covers gl_N and the split and canonical presentations of o_N and sp_N.
"""

from .caps import CapExceeded
from .lie import GL, O_CANON, O_SPLIT, SP_SPLIT, LieAlgebraSpec, build_spec
from .quasi import ShiftMatrix, apply_D, d_mu, d_mu_iterate, quasi_derive
from .uea import ParseError, UElement, commutator, gen, parse_element

__all__ = [
    "CapExceeded", "GL", "O_CANON", "O_SPLIT", "SP_SPLIT", "LieAlgebraSpec", "build_spec",
    "ShiftMatrix", "apply_D", "d_mu", "d_mu_iterate", "quasi_derive",
    "ParseError", "UElement", "commutator", "gen", "parse_element",
]
__version__ = "0.1.0"
