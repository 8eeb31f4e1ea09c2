"""Exact arithmetic, heights and Pisot-type classification in number fields,
plus a desk-scale search harness for S-unit approximation experiments."""

from .certify import CertifiedValue, Verdict, decide, embed, isolate_roots
from .classify import (
    check_p1_p2,
    is_pisot,
    is_pisot_polynomial,
    is_root_of_unity,
    partition_classes,
    pseudo_pisot_tuple,
)
from .field import FieldElement, NumberField, apply_galois, minimal_polynomial
from .gamma import GroupDesc, TupleFamilyFilter, enumerate_tuples, frak_n, materialize, ratio_filter
from .heights import projective_height, weil_height
from .polynomials import IntPolynomial

__version__ = "0.1.0"

__all__ = [
    "CertifiedValue", "Verdict", "decide", "embed", "isolate_roots",
    "check_p1_p2", "is_pisot", "is_pisot_polynomial", "is_root_of_unity",
    "partition_classes", "pseudo_pisot_tuple",
    "FieldElement", "NumberField", "apply_galois", "minimal_polynomial",
    "GroupDesc", "TupleFamilyFilter", "enumerate_tuples", "frak_n", "materialize", "ratio_filter",
    "projective_height", "weil_height", "IntPolynomial",
]
