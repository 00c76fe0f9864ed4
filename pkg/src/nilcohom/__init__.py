"""Exact Bott-Chern, Aeppli, Dolbeault and de Rham cohomology of Lie algebras with complex structure."""
from .scalars import GaussianRational
from .exterior import Form, Monomial, basis, wedge, conjugate, component
from .structure import Presentation, parse, validate, differentials, flags

__all__ = ["GaussianRational", "Form", "Monomial", "basis", "wedge", "conjugate", "component",
           "Presentation", "parse", "validate", "differentials", "flags"]
__version__ = "0.1.0"
