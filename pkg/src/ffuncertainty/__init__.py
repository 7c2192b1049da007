"""Finite-field Fourier transforms on Z/p and exact checks of their uncertainty principles."""

__version__ = "0.1.0"

from .field_core import FieldSpec, field_arith, find_generator, multiplicative_order, principal_root
from .fourier import FourierContext, character, forward, forward_rader, inverse, make_context, support
from .minors import build_minor, degenerate_minor_search, minor_report, rank_det, vandermonde_det
from .progressions import APSpec, SubsetOfZp, ap_elements, contains_ap, exact_r, gowers_bound
from .uncertainty import extremal_scan, profile, verify

__all__ = [
    "APSpec",
    "FieldSpec",
    "FourierContext",
    "SubsetOfZp",
    "ap_elements",
    "build_minor",
    "character",
    "contains_ap",
    "degenerate_minor_search",
    "exact_r",
    "extremal_scan",
    "field_arith",
    "find_generator",
    "forward",
    "forward_rader",
    "gowers_bound",
    "inverse",
    "make_context",
    "minor_report",
    "multiplicative_order",
    "principal_root",
    "profile",
    "rank_det",
    "support",
    "vandermonde_det",
    "verify",
]
