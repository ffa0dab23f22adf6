"""Superspace calculus: superfields, deformed superderivatives, transforms and the model catalog."""
from .models import MODELS, ModelSystem, UnknownModel, build_model, component_model, to_components
from .superfield import (
    FAMILIES, PHI, D_family, SuperfieldExpr, berezin_integrate, check_cubed, d_theta, deformed_partial,
    deformed_x, expand_superjets, super_D, super_D_eps,
)
from .transforms import (
    TransformReport, UnsupportedTransform, numeric_residual, on_shell, pt_density_check, pt_invariant,
    pt_phase, pt_transform, susy_invariant, susy_transform,
)
from .variational import (
    euler_operator, hamiltonian_flow, hamiltonian_superdensity, is_total_x_derivative,
    variational_derivative,
)

__all__ = [
    "FAMILIES", "MODELS", "PHI", "D_family", "ModelSystem", "SuperfieldExpr", "TransformReport",
    "UnknownModel", "UnsupportedTransform", "berezin_integrate", "build_model", "check_cubed",
    "component_model", "d_theta", "deformed_partial", "deformed_x", "euler_operator", "expand_superjets",
    "hamiltonian_flow", "hamiltonian_superdensity", "is_total_x_derivative", "numeric_residual", "on_shell",
    "pt_density_check", "pt_invariant", "pt_phase", "pt_transform", "super_D", "super_D_eps",
    "susy_invariant", "susy_transform", "to_components", "variational_derivative",
]
