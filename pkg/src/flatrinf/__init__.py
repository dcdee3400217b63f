"""Exact verification of the R-infinity criterion for flat-manifold holonomy
representations in odd dimension."""
from __future__ import annotations

from .linalg import Matrix, det, nullspace, rank, smith_normal_form
from .matgroup import MatrixGroup, close_group

__all__ = ["Matrix", "MatrixGroup", "close_group", "det", "nullspace", "rank", "smith_normal_form"]
__version__ = "0.1.0"
