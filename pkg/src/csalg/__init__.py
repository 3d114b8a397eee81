"""Exact constructive computations with central simple algebras."""

__version__ = "0.1.0"

from .exactfield import GF, QQ, Poly, PrimeField, Rationals, Tower, ZeroDivisorFound, ZeroDivisorWitness
from .algebra import (AlgElem, Algebra, CentralSimple, ContractViolation, Defect, LinMap,
                      central_simple_check, matrix_algebra, skolem_noether, tensor_product)
from .wedderburn import MatrixDecomposition, ProbeStrategy, full_decompose, nontrivial_idempotent
from .splitting import reduced_char_poly, reduced_norm, reduced_trace, splitting_algebra
from .quaternion import QuaternionParams, make_quaternion, recognize_quaternion
from .involutions import Involution, classify_first_kind, plus_minus_split
from .becher import QuadExtData, corestriction, quaternion_pair, splitting_sequence_less

__all__ = [
    "GF", "QQ", "Poly", "PrimeField", "Rationals", "Tower", "ZeroDivisorFound", "ZeroDivisorWitness",
    "AlgElem", "Algebra", "CentralSimple", "ContractViolation", "Defect", "LinMap",
    "central_simple_check", "matrix_algebra", "skolem_noether", "tensor_product",
    "MatrixDecomposition", "ProbeStrategy", "full_decompose", "nontrivial_idempotent",
    "reduced_char_poly", "reduced_norm", "reduced_trace", "splitting_algebra",
    "QuaternionParams", "make_quaternion", "recognize_quaternion",
    "Involution", "classify_first_kind", "plus_minus_split",
    "QuadExtData", "corestriction", "quaternion_pair", "splitting_sequence_less",
]
