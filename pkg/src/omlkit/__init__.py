"""Toolkit for two-variable orthomodular-lattice polynomials."""
__version__ = "0.1.0"
