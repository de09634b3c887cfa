"""
Spherical twists on zigzag algebras, their action on graded curves in the
punctured cylinder, and stability conditions on preprojective modules.
"""

from __future__ import annotations

from . import braid, curves, lattice, preprojective, scalars, stability, twisted, zigzag

__all__ = ["braid", "curves", "lattice", "preprojective", "scalars", "stability", "twisted", "zigzag"]

__version__ = "0.1.0"
