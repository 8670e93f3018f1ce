"""Exact computations in the cohomology of moduli of holomorphic bundles.

The heavy lifting lives in the C++ extension; this package re-exports the
main operations.
"""

from ._core import (
    codim,
    good_data_check,
    hn_types,
    moduli_dimension,
    normalization_coeffs,
    p_flag,
    p_gauge,
    p_moduli,
    p_semistable,
    pairing_json,
    par_rank,
    relation_window,
    relations_json,
    selftest,
    virtual_rank,
    weight_degree_count,
)

__all__ = [
    "codim",
    "good_data_check",
    "hn_types",
    "moduli_dimension",
    "normalization_coeffs",
    "p_flag",
    "p_gauge",
    "p_moduli",
    "p_semistable",
    "pairing_json",
    "par_rank",
    "relation_window",
    "relations_json",
    "selftest",
    "virtual_rank",
    "weight_degree_count",
]
