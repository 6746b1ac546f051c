"""Branched covers of finite-type surfaces."""

from ._core import (
    Automorphism,
    Cover,
    CurveSystem,
    Error,
    ParseError,
    Signature,
    ValidationError,
    census,
    homology_cover,
    is_invariant_under,
    is_liftable,
    orientable_double_cover,
    preset_classes,
    run_cli,
    schottky_double,
    separation_report,
)

__all__ = [
    "Automorphism",
    "Cover",
    "CurveSystem",
    "Error",
    "ParseError",
    "Signature",
    "ValidationError",
    "census",
    "homology_cover",
    "is_invariant_under",
    "is_liftable",
    "orientable_double_cover",
    "preset_classes",
    "run_cli",
    "schottky_double",
    "separation_report",
]
