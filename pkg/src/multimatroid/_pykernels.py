"""Pure-Python versions of the inner loops.

Mirrors ``_ckernels.pyx`` function for function; ``multimatroid.kernels``
picks one of the two at import time.
"""

from __future__ import annotations

from typing import Sequence

BACKEND = "python"


def max_intersection(bases: Sequence[int], query: int) -> int:
    best = 0
    for b in bases:
        c = (b & query).bit_count()
        if c > best:
            best = c
    return best


def max_intersections(bases: Sequence[int], queries: Sequence[int]) -> list[int]:
    return [max_intersection(bases, q) for q in queries]


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def boundary_count(
    vstart: Sequence[int],
    rot: Sequence[int],
    edge_of: Sequence[int],
    mate: Sequence[int],
    twist_mask: int,
    ymask: int,
    zmask: int,
) -> int:
    """Number of boundary components of ``G^{tau(Z)} minus Y``.

    Half-edge ``h`` owns two side nodes, ``2h`` (left) and ``2h + 1``
    (right). Corners join the right side of a half-edge to the left side of
    its rotation successor; an edge joins left-right / right-left, or
    left-left / right-right when twisted.
    """
    nh = len(rot)
    parent = list(range(2 * nh))
    isolated = 0
    alive = [False] * nh
    for v in range(len(vstart) - 1):
        surv = [h for h in rot[vstart[v]:vstart[v + 1]] if not (ymask >> edge_of[h]) & 1]
        k = len(surv)
        if k == 0:
            isolated += 1
            continue
        for i in range(k):
            h = surv[i]
            alive[h] = True
            nxt = surv[(i + 1) % k]
            a = _find(parent, 2 * h + 1)
            b = _find(parent, 2 * nxt)
            if a != b:
                parent[a] = b
    for h in range(nh):
        if not alive[h]:
            continue
        g = mate[h]
        if g < h:
            continue
        e = edge_of[h]
        tw = ((twist_mask ^ zmask) >> e) & 1
        if tw:
            pairs = ((2 * h, 2 * g), (2 * h + 1, 2 * g + 1))
        else:
            pairs = ((2 * h, 2 * g + 1), (2 * h + 1, 2 * g))
        for x, y in pairs:
            a = _find(parent, x)
            b = _find(parent, y)
            if a != b:
                parent[a] = b
    roots = set()
    for h in range(nh):
        if alive[h]:
            roots.add(_find(parent, 2 * h))
            roots.add(_find(parent, 2 * h + 1))
    return len(roots) + isolated


def state_boundary_counts(
    vstart: Sequence[int],
    rot: Sequence[int],
    edge_of: Sequence[int],
    mate: Sequence[int],
    twist_mask: int,
    nedges: int,
) -> list[int]:
    """Boundary counts for every ordered 3-partition, indexed in base 3.

    Digit ``i`` of the index is the block of edge ``i``: 0 = X, 1 = Y, 2 = Z.
    """
    total = 3 ** nedges
    out = [0] * total
    for idx in range(total):
        y = z = 0
        r = idx
        for e in range(nedges):
            d = r % 3
            r //= 3
            if d == 1:
                y |= 1 << e
            elif d == 2:
                z |= 1 << e
        out[idx] = boundary_count(vstart, rot, edge_of, mate, twist_mask, y, z)
    return out
