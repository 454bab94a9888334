"""Lowest-Landau-level exact diagonalization of the contact interaction."""
