"""Desk-scale engine for 2-sites and their bicategories of fractions."""

__version__ = "0.1.0"
