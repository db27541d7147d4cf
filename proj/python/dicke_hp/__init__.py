"""Dicke model / Holstein-Primakoff 1/N expansion toolkit."""

import json as _json

from . import _core
from ._core import (
    CutoffError,
    ModelParams,
    NumericalError,
    ValidationError,
    cat_record,
    dicke_hamiltonian,
    displacement_element,
    hp_sx_hamiltonian,
    leading_energy,
    macro_ratio,
    qamp_exact_photon_numbers,
    qamp_record,
    required_cutoff,
    well_cutoff,
)

__all__ = [
    "CutoffError",
    "ModelParams",
    "NumericalError",
    "ValidationError",
    "audit_coherent_state",
    "cat_record",
    "convergence_in_N",
    "convergence_in_g",
    "dicke_hamiltonian",
    "displacement_element",
    "fit_power_law",
    "hp_sx_hamiltonian",
    "leading_energy",
    "macro_ratio",
    "qamp_exact_photon_numbers",
    "qamp_record",
    "required_cutoff",
    "rs_corrections",
    "spectrum",
    "well_cutoff",
]


def spectrum(params, n_max, k=None):
    """Eigen-decomposition record {params, spec, eigenvalues, residual}."""
    return _json.loads(_core.spectrum(params, n_max, k))


def rs_corrections(params, m, n, order, n_max, c_cutoff):
    return _json.loads(_core.rs_corrections(params, m, n, order, n_max, c_cutoff))


def convergence_in_N(base, n_list):
    return _json.loads(_core.convergence_in_N(base, list(n_list)))


def convergence_in_g(base, g_list):
    return _json.loads(_core.convergence_in_g(base, list(g_list)))


def audit_coherent_state(beta, n_max):
    return _json.loads(_core.audit_coherent_state(complex(beta), n_max))


def fit_power_law(x, y):
    return _json.loads(_core.fit_power_law(list(x), list(y)))
