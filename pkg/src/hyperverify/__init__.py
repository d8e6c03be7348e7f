"""Exact and certified high-precision verification of hypergeometric and q-series identities."""

from .catalog import VerificationReport, catalog_entries, run, run_all
from .exactnum import PrecisionError, PrecReal, const_real
from .hypergeom import HGSpec, pfq_numeric, pfq_terminating
from .linform import LinearForm, linear_form_ball, linear_form_gn, linear_form_rivoal
from .qseries import QSeries, verify_q_identity

__version__ = "0.1.0"

__all__ = [
    "PrecisionError",
    "PrecReal",
    "const_real",
    "QSeries",
    "verify_q_identity",
    "HGSpec",
    "pfq_terminating",
    "pfq_numeric",
    "LinearForm",
    "linear_form_gn",
    "linear_form_ball",
    "linear_form_rivoal",
    "VerificationReport",
    "catalog_entries",
    "run",
    "run_all",
]
