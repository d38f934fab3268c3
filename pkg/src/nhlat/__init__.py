"""Spectral toolkit for finite non-Hermitian lattice models."""

from . import exceptional, fermions, kernels, lattice, metric, poly, spectra
from .kernels import BACKEND

__all__ = ["poly", "lattice", "spectra", "exceptional", "metric", "fermions",
           "kernels", "BACKEND"]
__version__ = "0.1.0"
