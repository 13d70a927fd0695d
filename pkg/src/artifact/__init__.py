"""Exact invariants of tamely ramified extensions of p-adic fields."""

from .chi_data import assign_chi, verify_theorem
from .cyclo_arith import Rot
from .galois_comb import DoubleCoset, ExtShape, count_formula, enumerate_double_cosets
from .jump_data import JumpDatum, Layer, random_valid, validate
from .norm_const import Case, CaseTag, case_for, verify_identity
from .rectifier import TameChar, full_rectifier, rectifier_over
from .suites import SweepConfig, run_suite
from .symp_modules import occupancy, t_mu, t_varpi
from .transfer import TameElement, delta_II_III2_at, delta_III2_vs_rectifier

__version__ = "0.1.0"

__all__ = [
    "Case",
    "CaseTag",
    "DoubleCoset",
    "ExtShape",
    "JumpDatum",
    "Layer",
    "Rot",
    "SweepConfig",
    "TameChar",
    "TameElement",
    "assign_chi",
    "case_for",
    "count_formula",
    "delta_III2_vs_rectifier",
    "delta_II_III2_at",
    "enumerate_double_cosets",
    "full_rectifier",
    "occupancy",
    "random_valid",
    "rectifier_over",
    "run_suite",
    "t_mu",
    "t_varpi",
    "validate",
    "verify_identity",
    "verify_theorem",
]
