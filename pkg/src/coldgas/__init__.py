"""Numerics for dilute Bose gases: scattering, ideal and dilute thermodynamics,
rotating Gross-Pitaevskii minimization and lowest-Landau-level exact diagonalization."""

__version__ = "0.1.0"
