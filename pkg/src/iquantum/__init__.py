"""Dual canonical bases of quasi-split iquantum groups via iHopf algebras."""

from .cartan import satake
from .dcb import (ConventionError, TriangularityError, dcb_double, dcb_f, dcb_iquantum,
                  lusztig_lemma_solve)
from .ihopf import double_algebra, ihopf
from .scalars import Scalar, u, v

__version__ = "0.1.0"

__all__ = ["satake", "ConventionError", "TriangularityError", "dcb_double", "dcb_f",
           "dcb_iquantum", "lusztig_lemma_solve", "double_algebra", "ihopf", "Scalar", "u", "v"]
