"""Desk-scale verification of explicit-formula bounds for least character non-residues."""

__version__ = "0.1.0"
