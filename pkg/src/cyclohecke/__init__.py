"""Exact characters of cyclotomic Hecke algebras via Murnaghan-Nakayama rules."""
from .characters import chi, chi_dual, chi_table, chi_tableau_sum
from .oracle import oracle_chi
from .ring import CyclotomicNumber, LaurentPoly
from .shapes import parse_multipartition

__all__ = [
    "CyclotomicNumber",
    "LaurentPoly",
    "chi",
    "chi_dual",
    "chi_table",
    "chi_tableau_sum",
    "oracle_chi",
    "parse_multipartition",
]
__version__ = "0.1.0"
