"""Exact toolkit for finite-dimensional braided Hopf algebras and their
tensor products."""

__version__ = "0.1.0"
