"""Exact-arithmetic toolkit for Weyl fans, type cones, and compactified
apartments of split semisimple groups."""

__version__ = "0.1.0"
