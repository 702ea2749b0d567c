"""MDS self-dual codes from (extended) generalized Reed-Solomon codes."""

from .constructions import ConstructionParams, construct, enumerate_lengths
from .field import INF, FieldContext, FieldElement, build_field, field_of_order
from .grs import EvaluationSet, GrsCode, ScalingVector, is_self_dual, make_code, mds_check
from .mobius import MobiusTransform, remove_infinity, transport

__all__ = [
    "INF",
    "ConstructionParams",
    "EvaluationSet",
    "FieldContext",
    "FieldElement",
    "GrsCode",
    "MobiusTransform",
    "ScalingVector",
    "build_field",
    "construct",
    "enumerate_lengths",
    "field_of_order",
    "is_self_dual",
    "make_code",
    "mds_check",
    "remove_infinity",
    "transport",
]
