"""Rotation invariants and orbit separation for 3D elasticity tensors."""
from . import binary_forms, elasticity, invariants, maeda, separation, tensor_core
from .elasticity import HarmonicDecomposition, decompose, from_voigt, reconstruct, to_voigt
from .errors import (ContractionArityError, DomainError, ElasinvError, FormatError,
                     InvalidDecompositionError, NonGenericError, RecoveryFailedError,
                     SingularBasisError, UnsupportedOrderError)
from .genericity import GenericityReport, genericity_report
from .invariants import InvariantVector, i_invariants, j_invariants, separating21
from .maeda import maeda_rational, separating18, separating19
from .separation import Decision, equivalent, recover_rotation

__version__ = "0.1.0"

__all__ = [
    "binary_forms", "elasticity", "invariants", "maeda", "separation", "tensor_core",
    "HarmonicDecomposition", "decompose", "from_voigt", "reconstruct", "to_voigt",
    "ContractionArityError", "DomainError", "ElasinvError", "FormatError",
    "InvalidDecompositionError", "NonGenericError", "RecoveryFailedError",
    "SingularBasisError", "UnsupportedOrderError",
    "GenericityReport", "genericity_report",
    "InvariantVector", "i_invariants", "j_invariants", "separating21",
    "maeda_rational", "separating18", "separating19",
    "Decision", "equivalent", "recover_rotation",
]
