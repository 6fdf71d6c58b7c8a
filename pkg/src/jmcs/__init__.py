"""Generalized coherent states of the harmonic and Morse oscillators by J-matrix tridiagonalization."""

__version__ = "0.1.0"
