"""Dirac quantum walks in 1+1-D and 3+1-D: dispersion scans, doubler and
pseudo-doubler diagnostics, position-space evolution, and second-quantized
(free and Schwinger-interacting) QCA simulation on small lattices."""

from .params import Walk1DParams, Walk3DParams

__all__ = ["Walk1DParams", "Walk3DParams"]
__version__ = "0.1.0"
