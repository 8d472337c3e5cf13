"""Backend selection for the hot loops.

The compiled extension is used when it imported cleanly, unless the
environment variable ``MULTIMATROID_PURE_PYTHON`` is set to a non-empty
value. Masks wider than 64 bits always take the Python path.
"""

from __future__ import annotations

import os
from typing import Sequence

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_WIDTH = 64

if _ckernels is not None and not os.environ.get("MULTIMATROID_PURE_PYTHON"):
    _fast = _ckernels
else:
    _fast = _pykernels

BACKEND: str = _fast.BACKEND


def compiled_available() -> bool:
    return _ckernels is not None


def _fits(*masks: int) -> bool:
    return all(m >> _WIDTH == 0 for m in masks)


def max_intersection(bases: Sequence[int], query: int) -> int:
    if _fast is not _pykernels and _fits(query):
        return _fast.max_intersection(bases, query)
    return _pykernels.max_intersection(bases, query)


def max_intersections(bases: Sequence[int], queries: Sequence[int]) -> list[int]:
    if _fast is not _pykernels and _fits(*queries):
        return _fast.max_intersections(bases, queries)
    return _pykernels.max_intersections(bases, queries)


def boundary_count(vstart, rot, edge_of, mate, twist_mask: int, ymask: int, zmask: int) -> int:
    if _fast is not _pykernels and len(set(edge_of)) <= _WIDTH:
        return _fast.boundary_count(vstart, rot, edge_of, mate, twist_mask, ymask, zmask)
    return _pykernels.boundary_count(vstart, rot, edge_of, mate, twist_mask, ymask, zmask)


def state_boundary_counts(vstart, rot, edge_of, mate, twist_mask: int, nedges: int) -> list[int]:
    if _fast is not _pykernels and nedges <= _WIDTH:
        return _fast.state_boundary_counts(vstart, rot, edge_of, mate, twist_mask, nedges)
    return _pykernels.state_boundary_counts(vstart, rot, edge_of, mate, twist_mask, nedges)
