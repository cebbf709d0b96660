"""Subfields of number fields, Galois-generating subfields and starting groups."""

__version__ = "0.1.0"
