from .ashg import build_challenger_ashg, build_pistar_ashg, extract_assignment, reduce_ashg
from .fhg import build_challenger_fhg, build_pistar_fhg, fhg_parameters, reduce_fhg
from .roles import ReductionArtifact, ReductionParams, Role, RoleKind, parse_role
from .tables import conformance_mismatches

from ..model import Kind


def reduce(instance, model: str):
    return {"ashg": reduce_ashg, "fhg": reduce_fhg}[Kind(model).value](instance)


def build_pistar(artifact: ReductionArtifact, tau_x):
    if artifact.params.kind is Kind.ADDITIVELY_SEPARABLE:
        return build_pistar_ashg(artifact, tau_x)
    return build_pistar_fhg(artifact, tau_x)


def build_challenger(artifact: ReductionArtifact, pistar, tau_y):
    if artifact.params.kind is Kind.ADDITIVELY_SEPARABLE:
        return build_challenger_ashg(artifact, pistar, tau_y)
    return build_challenger_fhg(artifact, pistar, tau_y)


__all__ = [
    "ReductionArtifact", "ReductionParams", "Role", "RoleKind", "parse_role",
    "reduce", "reduce_ashg", "reduce_fhg", "fhg_parameters",
    "build_pistar", "build_pistar_ashg", "build_pistar_fhg",
    "build_challenger", "build_challenger_ashg", "build_challenger_fhg",
    "extract_assignment", "conformance_mismatches",
]
