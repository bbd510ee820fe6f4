"""Kac-Baker spectra - transfer operators and zeta zeros of the Kac-Baker spin chain."""

__version__ = "0.1.0"
