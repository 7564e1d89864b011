"""Numerical function theory on the pentablock and the symmetrized bidisc."""

from .cpoly import BlaschkeProduct, ComplexPoly, TrigPoly, roots
from .construct import ConstructionData, build, roundtrip_check
from .domains import (
    Automorphism,
    GammaPoint,
    PentaPoint,
    automorphism_apply,
    in_bpenta,
    in_gamma,
    in_penta,
    on_royal,
)
from .errors import (
    DataError,
    InfeasibleError,
    NotNonnegativeError,
    NumericError,
    PentaError,
    UnreachableTargetError,
)
from .gamma_inner import GammaInnerRep, verify_gamma_inner
from .penta_inner import PentaInnerRep, assemble, verify_penta_inner
from .report import Report
from .schwarz import SchwarzProblem, feasibility, solve
from .specfact import fejer_riesz

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "BlaschkeProduct",
    "ComplexPoly",
    "ConstructionData",
    "DataError",
    "GammaInnerRep",
    "GammaPoint",
    "InfeasibleError",
    "NotNonnegativeError",
    "NumericError",
    "PentaError",
    "PentaInnerRep",
    "PentaPoint",
    "Report",
    "SchwarzProblem",
    "TrigPoly",
    "UnreachableTargetError",
    "assemble",
    "automorphism_apply",
    "build",
    "feasibility",
    "fejer_riesz",
    "in_bpenta",
    "in_gamma",
    "in_penta",
    "on_royal",
    "roots",
    "roundtrip_check",
    "solve",
    "verify_gamma_inner",
    "verify_penta_inner",
]
