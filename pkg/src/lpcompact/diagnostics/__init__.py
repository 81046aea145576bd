"""Family-level criteria: integrability, integral tightness, oscillation, covering and the estimate audit."""

from .audit import (
    AuditLine,
    AuditReport,
    FamilyAudit,
    PreconditionViolated,
    constant_T,
    family_theorem_audit,
    theorem_audit,
)
from .covering import CoveringResult, covering_number, family_covering
from .family import ChainNotMonotone, FunctionFamily, riesz_gap, riesz_gap_curve, riesz_gap_power
from .frechet import (
    FrechetCheck,
    FrechetFailure,
    FrechetSearchFailed,
    FrechetWitness,
    frechet_search,
    frechet_verify,
)
from .integrability import NoFeasibleDelta, UIProfile, select_delta, small_set_modulus, tail_integral, ui_profile
from .tightness import SetProbe, integral_tightness_probe

__all__ = [
    "AuditLine",
    "AuditReport",
    "ChainNotMonotone",
    "CoveringResult",
    "FamilyAudit",
    "FrechetCheck",
    "FrechetFailure",
    "FrechetSearchFailed",
    "FrechetWitness",
    "FunctionFamily",
    "NoFeasibleDelta",
    "PreconditionViolated",
    "SetProbe",
    "UIProfile",
    "constant_T",
    "covering_number",
    "family_covering",
    "family_theorem_audit",
    "frechet_search",
    "frechet_verify",
    "integral_tightness_probe",
    "riesz_gap",
    "riesz_gap_curve",
    "riesz_gap_power",
    "select_delta",
    "small_set_modulus",
    "tail_integral",
    "theorem_audit",
    "ui_profile",
]
