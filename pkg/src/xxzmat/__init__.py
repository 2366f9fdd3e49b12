"""Numerical workbench for rho and omega on a finite Matsubara XXZ chain."""

__version__ = "0.1.0"
