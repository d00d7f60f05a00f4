"""Bivariate dimension polynomials of finitely generated modules over the Weyl algebra."""
from .algebra import WeylElement, WeylMonomial
from .dimpoly import (
    CharPolyReport,
    InvariantSet,
    analyze,
    bernstein_polynomial,
    char_polynomial,
    enumerate_U_rs,
    extract_invariants,
)
from .groebner import Certificate, GroebnerBasis, Order, buchberger, certify_xd, xd_complete
from .numpoly import ExponentSet, NumPoly1, NumPoly2, eval2, omega_A
from .presentation import Presentation, parse, render_report
from .reduction import normal_form
from .terms import ModuleElement, Term

__all__ = [
    "CharPolyReport", "Certificate", "ExponentSet", "GroebnerBasis", "InvariantSet", "ModuleElement",
    "NumPoly1", "NumPoly2", "Order", "Presentation", "Term", "WeylElement", "WeylMonomial",
    "analyze", "bernstein_polynomial", "buchberger", "certify_xd", "char_polynomial", "enumerate_U_rs",
    "eval2", "extract_invariants", "normal_form", "omega_A", "parse", "render_report", "xd_complete",
]
