"""Random valid objects for property checks.

Every generator takes a :class:`random.Random` so runs are reproducible from
a seed. Validity comes from construction (representable matroids, matrix and
ribbon-graph delta-matroids, lifts), never from rejection sampling.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .core import Carrier, Multimatroid
from .matroid_delta import DeltaMatroid, Matroid, lift_delta, lift_matroid
from .ribbon import RibbonGraph, lift_ribbon, ribbon_delta


def _gf2_rank(vectors: list[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def random_matroid(rng: random.Random, max_elements: int = 6) -> Matroid:
    """A binary matroid from a random 0/1 matrix (loops and coloops included)."""
    n = rng.randint(1, max_elements)
    rows = rng.randint(0, n)
    cols = [rng.getrandbits(rows) if rows else 0 for _ in range(n)]
    r = _gf2_rank(cols)
    labels = [chr(ord("a") + i) for i in range(n)]
    bases = [
        [labels[i] for i in combo]
        for combo in itertools.combinations(range(n), r)
        if _gf2_rank([cols[i] for i in combo]) == r
    ]
    return Matroid(labels, bases, validate=False)


def _symmetric_delta(rng: random.Random, n: int) -> DeltaMatroid:
    """Sets indexing nonsingular principal submatrices of a symmetric GF(2) matrix."""
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.getrandbits(1)
    labels = [chr(ord("a") + i) for i in range(n)]
    feasible = []
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            rowvecs = [sum(m[i][j] << c for c, j in enumerate(combo)) for i in combo]
            if _gf2_rank(rowvecs) == k:
                feasible.append([labels[i] for i in combo])
    return DeltaMatroid(labels, feasible, validate=False)


def random_delta_matroid(rng: random.Random, max_elements: int = 6) -> DeltaMatroid:
    n = rng.randint(1, max_elements)
    kind = rng.randrange(3)
    if kind == 0:
        D = _symmetric_delta(rng, n)
    elif kind == 1:
        G = random_ribbon_graph(rng, max_edges=n, min_edges=n)
        D = ribbon_delta(G)
        D = DeltaMatroid([chr(ord("a") + i) for i in range(n)],
                         [[chr(ord("a") + G.edge_labels.index(e)) for e in f] for f in D.feasible()],
                         validate=False)
    else:
        D = random_matroid(rng, n).as_delta()
    twist = [e for e in D.elements if rng.random() < 0.3]
    return D.twist(twist)


def random_ribbon_graph(rng: random.Random, max_edges: int = 5, min_edges: int = 0,
                        max_vertices: int = 3) -> RibbonGraph:
    """Random rotations and twists; may be disconnected or have isolated vertices."""
    m = rng.randint(min_edges, max_edges)
    nv = rng.randint(1, max_vertices)
    labels = [chr(ord("a") + i) for i in range(m)]
    rots: list[list[str]] = [[] for _ in range(nv)]
    edges = {}
    for e in labels:
        h1, h2 = e + "1", e + "2"
        for h in (h1, h2):
            rot = rots[rng.randrange(nv)]
            rot.insert(rng.randint(0, len(rot)), h)
        edges[e] = (h1, h2, rng.random() < 0.4)
    return RibbonGraph(rots, edges)


def _restrict_carrier(Z: Multimatroid, keep: list[list[str]]) -> Multimatroid:
    """The multimatroid on a sub-carrier (same rank function)."""
    sub = Carrier(keep, Z.carrier.names)

    def independent(m: int) -> bool:
        return Z.is_independent_mask(sub.remap(m, Z.carrier))

    return Multimatroid.from_independence(sub, independent)


def add_free_element(Z: Multimatroid, cls: str, label: str) -> Multimatroid:
    """Adjoin ``label`` to class ``cls`` as an element raising every rank by one."""
    c = Z.carrier
    ci = c.class_index[cls]
    classes = [list(cl) for cl in c.classes]
    classes[ci].append(label)
    new = Carrier(classes, c.names)
    bases = []
    for b in Z.basis_masks:
        labs = c.labels_of(b)
        bases.append(labs)
        bases.append((labs - set(c.classes[ci])) | {label})
    return Multimatroid(new, bases)


def direct_sum(Z1: Multimatroid, Z2: Multimatroid) -> Multimatroid:
    c1, c2 = Z1.carrier, Z2.carrier
    p1 = {lab: "1" + lab for lab in c1.labels}
    p2 = {lab: "2" + lab for lab in c2.labels}
    carrier = Carrier(
        [[p1[x] for x in cl] for cl in c1.classes] + [[p2[x] for x in cl] for cl in c2.classes],
        ["1" + n for n in c1.names] + ["2" + n for n in c2.names],
    )
    bases = [
        [p1[x] for x in b1] + [p2[x] for x in b2]
        for b1 in Z1.bases() for b2 in Z2.bases()
    ]
    return Multimatroid(carrier, bases)


def _seed_multimatroid(rng: random.Random, classes: int) -> Multimatroid:
    kind = rng.randrange(3)
    if kind == 0:
        G = random_ribbon_graph(rng, max_edges=classes, min_edges=classes)
        return lift_ribbon(G)
    if kind == 1:
        return lift_delta(random_delta_matroid(rng, classes))
    return lift_matroid(random_matroid(rng, classes))


def random_multimatroid(rng: random.Random, max_classes: int = 5, max_size: int = 4) -> Multimatroid:
    """A non-degenerate multimatroid with class sizes between 2 and ``max_size``."""
    n = rng.randint(1, max_classes)
    if n >= 2 and rng.random() < 0.2:
        k = rng.randint(1, n - 1)
        Z = direct_sum(_seed_multimatroid(rng, k), _seed_multimatroid(rng, n - k))
    else:
        Z = _seed_multimatroid(rng, n)
    n = len(Z.carrier)
    # trim some 3-element classes down to 2
    keep = []
    for cl in Z.carrier.classes:
        cl = list(cl)
        if len(cl) > 2 and rng.random() < 0.3:
            cl.remove(rng.choice(cl))
        keep.append(cl)
    if any(len(a) != len(b) for a, b in zip(keep, Z.carrier.classes)):
        Z = _restrict_carrier(Z, keep)
    for name, cl in zip(Z.carrier.names, list(Z.carrier.classes)):
        target = rng.randint(len(cl), max(len(cl), max_size))
        for j in range(target - len(cl)):
            Z = add_free_element(Z, name, f"{name}+{j}")
    return Z


def random_weights(rng: random.Random, labels) -> dict[str, Fraction]:
    return {lab: Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for lab in labels}


def random_order(rng: random.Random, names) -> list[str]:
    names = list(names)
    rng.shuffle(names)
    return names
