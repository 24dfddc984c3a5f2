"""Counting support-tau-tilting modules over Auslander algebras of Dynkin type."""

__version__ = "0.1.0"
