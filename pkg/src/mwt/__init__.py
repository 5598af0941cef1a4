"""Grothendieck-Witt rings, Milnor-Witt K-theory over finite fields and F_q(t),
residues and Bass-Tate transfers."""

from .fields import (Extension, FieldElement, FieldError, FieldHom, FiniteField, Poly, factor, make_field,
                     min_poly, norm_and_trace, simple_extension, square_class, tensor_split)
from .gw import (GWElement, QExtension, QQ, WittElement, diagonalize_gram, gw_equal, gw_from_diagonal, n_epsilon,
                 nilpotent_exponent, trace_form_transfer, witt_project)
from .kmw import (ClosedPoint, FunctionField, KMWElement, KMWInvariantsFq, KMWTerm, RatFunc, equal_ft, eta_mul,
                  kmw_equal_fq, kmw_mul, kmw_symbol, normalize_fq, residue, specialize)
from .transfers import (Tower, bt_decompose, transfer_bt, transfer_geo, transfer_tower, transition_unit)

__version__ = "0.1.0"
