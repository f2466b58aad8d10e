"""sigma-duals, sigma-hulls and MDS codes with prescribed Galois hulls over GF(p^e)."""

from .code import LinearCode
from .gf import FieldCtx, field_new
from .linalg import Mat
from .semilinear import Monomial, SigmaMap

__version__ = "0.1.0"
__all__ = ["FieldCtx", "LinearCode", "Mat", "Monomial", "SigmaMap", "field_new"]
