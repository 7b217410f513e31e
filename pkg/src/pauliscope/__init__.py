"""Exact Pauli-graph and finite-geometry toolkit for N-qudit operator algebras."""

__version__ = "0.1.0"
