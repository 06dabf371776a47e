"""Spinor formulation of the electromagnetic field."""
from .kernels import BACKEND

__version__ = "0.1.0"
