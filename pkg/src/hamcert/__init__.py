"""Feasibility certificates for gluing semi-free Hamiltonian circle actions on 6-manifolds."""

__version__ = "0.1.0"
