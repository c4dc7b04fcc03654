"""K-functional, K-orbit and transfer computations for trace matrix models.

Matrices are complex numpy arrays paired with a trace weight ``w`` (the trace
of a rank one projection). Step functions are dicts with keys
``breakpoints``, ``values`` and ``tail``.
"""

from ._kinterp import (
    DecompositionError,
    DomainError,
    FormatError,
    apply,
    check_interp,
    counterexample,
    decompose,
    k_at,
    k_curve,
    korbit_norm,
    m_at,
    mu,
    norm_keys,
    orbit_check,
    pointwise_constant,
    run_suite,
    transfer,
)

__all__ = [
    "DecompositionError",
    "DomainError",
    "FormatError",
    "apply",
    "check_interp",
    "counterexample",
    "decompose",
    "k_at",
    "k_curve",
    "korbit_norm",
    "m_at",
    "mu",
    "norm_keys",
    "orbit_check",
    "pointwise_constant",
    "run_suite",
    "transfer",
]
