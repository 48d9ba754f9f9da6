"""Exact computations with Artinian Gorenstein algebras S/Ann(f), their
Lefschetz properties, Perazzo 3-folds and the Gordan-Noether construction."""

from .artinian import HilbertVector, hilbert_vector
from .binaryforms import BinaryForm, border_rank, cat_matrix, classify_secant_position, sylvester_decompose
from .errors import GorensteinError
from .exactmath import ExactMatrix, GaussianRational
from .lefschetz import lefschetz_report, slp_verdict, wlp_verdict
from .perazzo import PerazzoForm, build_perazzo, classify_extremal, maximal_example, minimal_family, perazzo_hilbert
from .polyring import Form, parse_form

__all__ = [
    "BinaryForm",
    "ExactMatrix",
    "Form",
    "GaussianRational",
    "GorensteinError",
    "HilbertVector",
    "PerazzoForm",
    "border_rank",
    "build_perazzo",
    "cat_matrix",
    "classify_extremal",
    "classify_secant_position",
    "hilbert_vector",
    "lefschetz_report",
    "maximal_example",
    "minimal_family",
    "parse_form",
    "perazzo_hilbert",
    "slp_verdict",
    "sylvester_decompose",
    "wlp_verdict",
]

__version__ = "0.1.0"
