"""Exact algebra for the quantum superalgebra U_q[osp(1/2)], its dual function
algebra, covariant quantum superspaces and superspheres."""
from __future__ import annotations

__version__ = "0.1.0"
