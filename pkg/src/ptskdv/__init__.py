"""Symbolic superspace calculus and spectral simulation for PT-symmetric deformations of supersymmetric KdV."""
__version__ = "0.1.0"
