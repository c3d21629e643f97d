"""Spectral analysis of max-times and plus-times cone operators."""

from ._core import (
    ConsistencyError,
    InputError,
    Matrix,
    ap_residual,
    ap_scan,
    approx_eigenvector,
    bonsall_radius,
    brute_force_oracle,
    cyclic_products,
    discretize,
    ensemble_run,
    eval_operator,
    eval_scalar,
    hadamard_power,
    hadamard_product,
    load_matrix_json,
    local_radius,
    lower_radius,
    mat_apply,
    mat_mul,
    mat_power_norm,
    min_modulus,
    min_modulus_root_sequence,
    norm_root_sequence,
    op_norm,
    path_norm,
    point_spectrum,
    power_coeffs,
    radius_refinement,
    verify_cor53,
    verify_lower_mapping,
    verify_point_mapping,
    verify_radius_mapping,
    verify_thm51,
    verify_thm55,
)

__all__ = [
    "ConsistencyError",
    "InputError",
    "Matrix",
    "ap_residual",
    "ap_scan",
    "approx_eigenvector",
    "bonsall_radius",
    "brute_force_oracle",
    "cyclic_products",
    "discretize",
    "ensemble_run",
    "eval_operator",
    "eval_scalar",
    "hadamard_power",
    "hadamard_product",
    "load_matrix_json",
    "local_radius",
    "lower_radius",
    "mat_apply",
    "mat_mul",
    "mat_power_norm",
    "min_modulus",
    "min_modulus_root_sequence",
    "norm_root_sequence",
    "op_norm",
    "path_norm",
    "point_spectrum",
    "power_coeffs",
    "radius_refinement",
    "verify_cor53",
    "verify_lower_mapping",
    "verify_point_mapping",
    "verify_radius_mapping",
    "verify_thm51",
    "verify_thm55",
]
