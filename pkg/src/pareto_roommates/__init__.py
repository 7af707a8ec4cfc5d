"""Pareto efficiency testing for matchings in the roommates problem."""

from .checker import check
from .fileformat import parse_instance, render_instance
from .model import (
    Instance,
    Matching,
    PreferenceProfile,
    Verdict,
    find_irrational_pairs,
    pareto_dominates,
    prefers,
    validate_matching,
    validate_profile,
)

__all__ = [
    "Instance",
    "Matching",
    "PreferenceProfile",
    "Verdict",
    "check",
    "find_irrational_pairs",
    "parse_instance",
    "pareto_dominates",
    "prefers",
    "render_instance",
    "validate_matching",
    "validate_profile",
]

__version__ = "0.1.0"
