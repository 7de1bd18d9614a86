"""Cuts of graphs as generators: cut cones, cut lattices and Hilbert bases."""

__version__ = "0.1.0"
