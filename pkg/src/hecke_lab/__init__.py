"""Hecke-Lab - numerical verification of Dirichlet series identities for automorphic integrals on Hecke groups."""

__version__ = "0.1.0"
