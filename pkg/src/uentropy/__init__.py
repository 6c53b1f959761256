"""Numerical unstable-entropy theory for linear toral maps and subshifts."""

__version__ = "0.1.0"
