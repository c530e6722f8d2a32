"""Symbolic workbench for braided wiring diagrams with tangencies."""

__version__ = "0.1.0"
