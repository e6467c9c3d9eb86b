"""Bounded ideal-membership checks for multiparameter Manin-matrix identities."""

__version__ = "0.1.0"
