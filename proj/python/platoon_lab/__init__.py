"""Spectral and frequency-domain analysis of asymmetric bidirectional vehicle platoons."""

from ._core import (
    ConfigError,
    Error,
    PlatoonConfig,
    closedform_eigenvalues,
    direct_response,
    dominance_certificate,
    frequency_response,
    gamma_sequence,
    harmonic_test,
    hinf_norm,
    kappa_modulus_sq,
    laplacian,
    load_config,
    max_time_step,
    parse_config,
    product_response,
    reduced_laplacian,
    simulate_step,
    solve_thetas,
    spectrum,
    theorem1_bound,
    verify_eigen_identities,
)
from ._core import __version__

__all__ = [
    "ConfigError",
    "Error",
    "PlatoonConfig",
    "closedform_eigenvalues",
    "direct_response",
    "dominance_certificate",
    "frequency_response",
    "gamma_sequence",
    "harmonic_test",
    "hinf_norm",
    "kappa_modulus_sq",
    "laplacian",
    "load_config",
    "max_time_step",
    "parse_config",
    "product_response",
    "reduced_laplacian",
    "simulate_step",
    "solve_thetas",
    "spectrum",
    "theorem1_bound",
    "verify_eigen_identities",
]
