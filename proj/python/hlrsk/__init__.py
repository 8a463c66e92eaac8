"""Exact and stochastic toolkit for randomized column insertion.

Thin re-export of the compiled module.  Exact values are exchanged as
canonical "numerator/denominator" strings; rational inputs are strings
of the same shape ("1/2", "3", "-7/4").
"""

try:
    from ._hlrsk import (
        evaluate_formula,
        generator_tau_series,
        input_law_mass,
        mc_moment,
        rate_table,
        sample_field,
        sample_sixvertex,
        transition_law,
        transition_weight,
        transition_weight_at,
        verify_commutation,
        verify_measure_identity,
        verify_process_observable,
        verify_skew_cauchy,
    )
except ImportError:
    from _hlrsk import (
        evaluate_formula,
        generator_tau_series,
        input_law_mass,
        mc_moment,
        rate_table,
        sample_field,
        sample_sixvertex,
        transition_law,
        transition_weight,
        transition_weight_at,
        verify_commutation,
        verify_measure_identity,
        verify_process_observable,
        verify_skew_cauchy,
    )

__all__ = [
    "evaluate_formula",
    "generator_tau_series",
    "input_law_mass",
    "mc_moment",
    "rate_table",
    "sample_field",
    "sample_sixvertex",
    "transition_law",
    "transition_weight",
    "transition_weight_at",
    "verify_commutation",
    "verify_measure_identity",
    "verify_process_observable",
    "verify_skew_cauchy",
]
