"""The periodic extended Lotka-Volterra lattice LV(N, L)."""
from .center import CenterError, CenterSpec, center_count, center_spec, k0_set, k_set, sharpness
from .certify import Certificate, OutOfScope, PQReport, certify, class_genus, pq_realization_check, table
from .flows import FlowAborted, FlowSystem, Trajectory, bogoyavlensky_field, initial_state, integrate, relative_drift
from .integrals import SYMBOLIC_CAPS, CapExceeded, IMResult, count_im_by_rank, extract_im
from .model import ConsistencyError, LVModel, check_range, dual_T, lv_model, numeric_T, numeric_T_array
from .sov import divisor_trajectory, lv_canonical_check, lv_divisor, poisson_tensor

__all__ = [
    "SYMBOLIC_CAPS", "CapExceeded", "CenterError", "CenterSpec", "Certificate", "ConsistencyError",
    "FlowAborted", "FlowSystem", "IMResult", "LVModel", "OutOfScope", "PQReport", "Trajectory",
    "bogoyavlensky_field", "center_count", "center_spec", "certify", "check_range", "class_genus",
    "count_im_by_rank", "divisor_trajectory", "dual_T", "extract_im", "initial_state", "integrate",
    "k0_set", "k_set", "lv_canonical_check", "lv_divisor", "lv_model", "numeric_T", "numeric_T_array",
    "pq_realization_check", "poisson_tensor", "relative_drift", "sharpness", "table",
]
