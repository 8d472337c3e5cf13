"""Ribbon graphs as signed rotation systems.

A vertex is a cyclic sequence of half-edge ids (read clockwise); an edge owns
two half-edges and a twist flag. Each half-edge ``h`` has a left and a right
side. Walking the boundary, a corner takes the right side of ``h`` to the left
side of the next half-edge in the rotation, and an edge takes left to right
(right to left), or left to left (right to right) when twisted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import kernels
from .core import Carrier, Multimatroid, MultimatroidError, PreconditionError, bar, dot, hat
from .matroid_delta import DeltaMatroid
from .poly import T, Polynomial, named

LEFT, RIGHT = "L", "R"

_ONE = Polynomial.const(1)
_T = Polynomial.var(T)
_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Edge:
    halves: tuple[str, str]
    twisted: bool = False


class RibbonGraph:
    def __init__(self, vertices: Sequence[Sequence[str]], edges: Mapping[str, Edge | Mapping | tuple]):
        self.vertices: tuple[tuple[str, ...], ...] = tuple(tuple(v) for v in vertices)
        parsed: dict[str, Edge] = {}
        for lab, raw in edges.items():
            if isinstance(raw, Edge):
                parsed[lab] = raw
            elif isinstance(raw, Mapping):
                try:
                    h1, h2 = raw["halves"]
                except (KeyError, ValueError, TypeError):
                    raise MultimatroidError(f"edge {lab!r} needs two 'halves'") from None
                parsed[lab] = Edge((h1, h2), bool(raw.get("twisted", False)))
            else:
                h1, h2, *rest = raw
                parsed[lab] = Edge((h1, h2), bool(rest[0]) if rest else False)
        self.edges: dict[str, Edge] = parsed
        self._validate()

    def _validate(self) -> None:
        seen: dict[str, int] = {}
        for vi, rot in enumerate(self.vertices):
            for h in rot:
                if h in seen:
                    raise MultimatroidError(f"half-edge {h!r} appears twice in the rotations")
                seen[h] = vi
        owner: dict[str, str] = {}
        for lab, e in self.edges.items():
            h1, h2 = e.halves
            if h1 == h2:
                raise MultimatroidError(f"edge {lab!r} must own two distinct half-edges")
            for h in e.halves:
                if h not in seen:
                    raise MultimatroidError(f"half-edge {h!r} of edge {lab!r} is not on any vertex")
                if h in owner:
                    raise MultimatroidError(f"half-edge {h!r} belongs to two edges")
                owner[h] = lab
        stray = set(seen) - set(owner)
        if stray:
            raise MultimatroidError(f"half-edges without an edge: {sorted(stray)}")
        self._vertex_of = seen
        self._edge_of = owner

    # basic structure
    def __repr__(self):
        return f"RibbonGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def __eq__(self, other):
        if not isinstance(other, RibbonGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.edges.items()))))

    @property
    def edge_labels(self) -> tuple[str, ...]:
        return tuple(self.edges)

    def mate(self, h: str) -> str:
        h1, h2 = self.edges[self._edge_of[h]].halves
        return h2 if h == h1 else h1

    def ends(self, e: str) -> tuple[int, int]:
        h1, h2 = self.edges[e].halves
        return self._vertex_of[h1], self._vertex_of[h2]

    def is_loop(self, e: str) -> bool:
        u, v = self.ends(e)
        return u == v

    def _check_edges(self, A: Iterable[str]) -> set[str]:
        A = set(A)
        unknown = A - set(self.edges)
        if unknown:
            raise MultimatroidError(f"unknown edges {sorted(unknown)}")
        return A

    def _layout(self):
        labels = self.edge_labels
        eidx = {lab: i for i, lab in enumerate(labels)}
        hidx: dict[str, int] = {}
        vstart = [0]
        for rot in self.vertices:
            for h in rot:
                hidx[h] = len(hidx)
            vstart.append(len(hidx))
        nh = len(hidx)
        edge_of = [0] * nh
        mate = [0] * nh
        twist = 0
        for lab, e in self.edges.items():
            h1, h2 = hidx[e.halves[0]], hidx[e.halves[1]]
            edge_of[h1] = edge_of[h2] = eidx[lab]
            mate[h1], mate[h2] = h2, h1
            if e.twisted:
                twist |= 1 << eidx[lab]
        return vstart, list(range(nh)), edge_of, mate, twist, eidx

    def _edge_mask(self, A: Iterable[str], eidx: Mapping[str, int]) -> int:
        m = 0
        for lab in A:
            m |= 1 << eidx[lab]
        return m

    def b_of_state(self, Y: Iterable[str] = (), Z: Iterable[str] = ()) -> int:
        """Boundary components of the partial Petrial at ``Z`` with ``Y`` deleted."""
        Y, Z = self._check_edges(Y), self._check_edges(Z)
        vstart, rot, edge_of, mate, twist, eidx = self._layout()
        return kernels.boundary_count(
            vstart, rot, edge_of, mate, twist, self._edge_mask(Y, eidx), self._edge_mask(Z, eidx)
        )

    def boundary_count(self) -> int:
        return self.b_of_state()

    def connected_components(self) -> int:
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            u, v = self.ends(e)
            parent[find(u)] = find(v)
        return len({find(v) for v in range(len(self.vertices))})

    def boundary_components(self):
        """``(b, trace)``; see :func:`boundary_trace`."""
        trace = boundary_trace(self)
        return len(trace.walks) + trace.isolated, trace

    # moves
    def delete(self, A: Iterable[str]) -> "RibbonGraph":
        A = self._check_edges(A)
        gone = {h for e in A for h in self.edges[e].halves}
        verts = [[h for h in rot if h not in gone] for rot in self.vertices]
        return RibbonGraph(verts, {k: v for k, v in self.edges.items() if k not in A})

    def restrict(self, A: Iterable[str]) -> "RibbonGraph":
        A = self._check_edges(A)
        return self.delete(set(self.edges) - A)

    def partial_petrial(self, A: Iterable[str]) -> "RibbonGraph":
        A = self._check_edges(A)
        return RibbonGraph(self.vertices, {
            k: Edge(v.halves, v.twisted != (k in A)) for k, v in self.edges.items()
        })

    def contract(self, e: str) -> "RibbonGraph":
        """Contract ``e``; the boundary components are unchanged."""
        self._check_edges([e])
        h1, h2 = self.edges[e].halves
        u, v = self._vertex_of[h1], self._vertex_of[h2]
        edges = {k: val for k, val in self.edges.items() if k != e}
        verts = [list(r) for r in self.vertices]
        twisted = self.edges[e].twisted

        def after(rot: list[str], h: str) -> list[str]:
            i = rot.index(h)
            return rot[i + 1:] + rot[:i]

        def flip(hs: Iterable[str]) -> None:
            for h in hs:
                lab = self._edge_of[h]
                if lab in edges:
                    old = edges[lab]
                    edges[lab] = Edge(old.halves, not old.twisted)

        if u != v:
            ru, rv = verts[u], verts[v]
            tail = after(rv, h2)
            if twisted:
                # turn v over so that e becomes untwisted
                tail = list(reversed(tail))
                flip(tail)
            merged = after(ru, h1) + tail
            new = [r for i, r in enumerate(verts) if i not in (u, v)]
            new.insert(min(u, v), merged)
            return RibbonGraph(new, edges)
        rot = verts[u]
        seq = after(rot, h1)
        j = seq.index(h2)
        A, B = seq[:j], seq[j + 1:]
        new = [r for i, r in enumerate(verts) if i != u]
        if not twisted:
            new[u:u] = [A, B]
        else:
            flip(A)
            new.insert(u, B + list(reversed(A)))
        return RibbonGraph(new, edges)

    # edge types
    def is_bridge(self, e: str) -> bool:
        return self.delete([e]).connected_components() > self.connected_components()

    def is_trivial_loop(self, e: str) -> bool:
        """A loop whose two sides at its vertex lie in different parts of ``G - e``."""
        if not self.is_loop(e):
            return False
        h1, h2 = self.edges[e].halves
        v = self._vertex_of[h1]
        rot = list(self.vertices[v])
        i = rot.index(h1)
        seq = rot[i + 1:] + rot[:i]
        j = seq.index(h2)
        side = {h: 0 for h in seq[:j]}
        side.update({h: 1 for h in seq[j + 1:]})
        n = len(self.vertices)
        # vertex v is split into n (side 0) and n + 1 (side 1)
        parent = list(range(n + 2))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def node(h):
            return n + side[h] if h in side else self._vertex_of[h]

        for lab, ed in self.edges.items():
            if lab == e:
                continue
            a, b = (node(h) for h in ed.halves)
            parent[find(a)] = find(b)
        return find(n) != find(n + 1)

    def edge_kind(self, e: str) -> str:
        if self.is_bridge(e):
            return "bridge"
        if self.is_trivial_loop(e):
            return "trivial nonorientable loop" if self.edges[e].twisted else "trivial orientable loop"
        return "ordinary"

    def to_json(self) -> dict:
        return {
            "vertices": [list(r) for r in self.vertices],
            "edges": {k: {"halves": list(v.halves), "twisted": v.twisted} for k, v in self.edges.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "RibbonGraph":
        try:
            return cls(data["vertices"], data["edges"])
        except (KeyError, TypeError, AttributeError):
            raise MultimatroidError("ribbon-graph documents need 'vertices' and 'edges'") from None


# boundary tracing

@dataclass(frozen=True)
class Visit:
    """One pass of a boundary curve along an edge.

    ``kind`` is ``"edge"`` for a side of an edge ribbon (``tail``/``head`` are
    half-edge sides) and ``"gap"`` for the stretch of vertex boundary where a
    deleted edge used to attach (``tail`` is the half-edge, ``head`` the
    direction ``"cw"`` or ``"ccw"``).
    """

    kind: str
    edge: str
    tail: tuple
    head: tuple


@dataclass(frozen=True)
class BoundaryTrace:
    walks: tuple[tuple[Visit, ...], ...]
    isolated: int

    def count(self) -> int:
        return len(self.walks) + self.isolated


def boundary_trace(G: RibbonGraph, Y: Iterable[str] = (), Z: Iterable[str] = ()) -> BoundaryTrace:
    """Trace the boundary of ``G`` twisted at ``Z`` with ``Y`` deleted.

    Vertices with no surviving half-edge become one walk each made of gap
    visits (or count as ``isolated`` when they carry no half-edges at all).
    """
    Y, Z = G._check_edges(Y), G._check_edges(Z)
    alive = {h for lab, e in G.edges.items() if lab not in Y for h in e.halves}
    corner: dict[tuple, tuple] = {}
    gaps: dict[tuple, list[str]] = {}
    walks: list[tuple[Visit, ...]] = []
    isolated = 0
    for rot in G.vertices:
        surv = [i for i, h in enumerate(rot) if h in alive]
        if not surv:
            if rot:
                walks.append(tuple(Visit("gap", G._edge_of[h], (h,), ("cw",)) for h in rot))
            else:
                isolated += 1
            continue
        k = len(surv)
        for j in range(k):
            a, b = surv[j], surv[(j + 1) % k]
            ha, hb = rot[a], rot[b]
            between = []
            i = (a + 1) % len(rot)
            while i != b:
                between.append(rot[i])
                i = (i + 1) % len(rot)
            corner[(ha, RIGHT)] = (hb, LEFT)
            corner[(hb, LEFT)] = (ha, RIGHT)
            gaps[(ha, RIGHT)] = between

    def across(node):
        h, s = node
        lab = G._edge_of[h]
        g = G.mate(h)
        tw = G.edges[lab].twisted != (lab in Z)
        return (g, s if tw else (LEFT if s == RIGHT else RIGHT))

    seen = set()
    for rot in G.vertices:
        for h in rot:
            if h not in alive:
                continue
            for start in ((h, LEFT), (h, RIGHT)):
                if start in seen:
                    continue
                walk: list[Visit] = []
                node = start
                while True:
                    seen.add(node)
                    nxt = across(node)
                    seen.add(nxt)
                    walk.append(Visit("edge", G._edge_of[node[0]], node, nxt))
                    c = corner[nxt]
                    if nxt[1] == RIGHT:
                        for g in gaps[nxt]:
                            walk.append(Visit("gap", G._edge_of[g], (g,), ("cw",)))
                    else:
                        for g in reversed(gaps[c]):
                            walk.append(Visit("gap", G._edge_of[g], (g,), ("ccw",)))
                    node = c
                    if node == start:
                        break
                walks.append(tuple(walk))
    return BoundaryTrace(tuple(walks), isolated)


# quasi-trees and the 3-matroid

Partition = tuple[frozenset, frozenset, frozenset]


def _decode(idx: int, labels: Sequence[str]) -> Partition:
    blocks: tuple[list, list, list] = ([], [], [])
    for lab in labels:
        blocks[idx % 3].append(lab)
        idx //= 3
    return frozenset(blocks[0]), frozenset(blocks[1]), frozenset(blocks[2])


def state_counts(G: RibbonGraph) -> list[int]:
    """``b`` for every ordered 3-partition, indexed in base 3 by edge order."""
    vstart, rot, edge_of, mate, twist, _ = G._layout()
    return kernels.state_boundary_counts(vstart, rot, edge_of, mate, twist, len(G.edges))


def quasi_tree_states(G: RibbonGraph) -> list[Partition]:
    k = G.connected_components()
    labels = G.edge_labels
    return [_decode(i, labels) for i, b in enumerate(state_counts(G)) if b == k]


def lift_ribbon(G: RibbonGraph) -> Multimatroid:
    """The 3-matroid whose bases are the quasi-tree states."""
    labels = G.edge_labels
    carrier = Carrier([[dot(e), bar(e), hat(e)] for e in labels], list(labels))
    bases = []
    for X, Y, Z in quasi_tree_states(G):
        bases.append([dot(e) if e in X else bar(e) if e in Y else hat(e) for e in labels])
    return Multimatroid(carrier, bases)


def ribbon_delta(G: RibbonGraph) -> DeltaMatroid:
    """Edge sets ``A`` with ``b(G|A) = k(G)``."""
    k = G.connected_components()
    labels = G.edge_labels
    feasible = []
    for X, Y, Z in (_decode(i, labels) for i, b in enumerate(state_counts(G)) if b == k):
        if not Z:
            feasible.append(X)
    return DeltaMatroid(labels, feasible, validate=False)


# weights

def _wvec(G: RibbonGraph, w) -> dict[str, Polynomial]:
    out = {}
    for e in G.edges:
        v = 1 if w is None else w.get(e, 1)
        out[e] = v if isinstance(v, Polynomial) else Polynomial.const(v)
    return out


def symbolic_ribbon_weights(G: RibbonGraph):
    """Named variables ``alpha[e]``, ``beta[e]``, ``gamma[e]``."""
    return tuple(
        {e: Polynomial.var(named(f"{name}[{e}]")) for e in G.edges}
        for name in ("alpha", "beta", "gamma")
    )


def multimatroid_weights(G: RibbonGraph, alpha=None, beta=None, gamma=None) -> dict[str, Polynomial]:
    """Edge weights placed on the slots of the lift, ``alpha`` on dots, ``beta`` on bars, ``gamma`` on hats."""
    a, b, g = _wvec(G, alpha), _wvec(G, beta), _wvec(G, gamma)
    out = {}
    for e in G.edges:
        out[dot(e)], out[bar(e)], out[hat(e)] = a[e], b[e], g[e]
    return out


# polynomials

def topo_transition_direct(G: RibbonGraph, alpha=None, beta=None, gamma=None) -> Polynomial:
    """State sum over ordered 3-partitions of ``alpha_X beta_Y gamma_Z t^b``."""
    a, b, g = _wvec(G, alpha), _wvec(G, beta), _wvec(G, gamma)
    labels = G.edge_labels
    counts = state_counts(G)
    by_b: dict[int, Polynomial] = {}
    for idx, nb in enumerate(counts):
        term = _ONE
        r = idx
        for lab in labels:
            d = r % 3
            r //= 3
            term = term * (a[lab] if d == 0 else b[lab] if d == 1 else g[lab])
        by_b[nb] = by_b.get(nb, Polynomial()) + term
    return sum((Polynomial.var(T, nb) * p for nb, p in by_b.items()), Polynomial())


def topo_transition_recursive(G: RibbonGraph, alpha=None, beta=None, gamma=None,
                              order: Sequence[str] | None = None) -> Polynomial:
    """Five-case recursion on the greatest remaining edge."""
    a, b, g = _wvec(G, alpha), _wvec(G, beta), _wvec(G, gamma)
    rank = _edge_rank(G, order)

    def go(H: RibbonGraph) -> Polynomial:
        if not H.edges:
            return Polynomial.var(T, len(H.vertices))
        e = max(H.edges, key=rank.__getitem__)
        kind = H.edge_kind(e)
        if kind == "bridge":
            return (a[e] + _T * b[e] + g[e]) * go(H.contract(e))
        if kind == "trivial orientable loop":
            return (_T * a[e] + b[e] + g[e]) * go(H.delete([e]))
        if kind == "trivial nonorientable loop":
            # contracting or deleting a trivial twisted loop gives the same polynomial
            return (a[e] + b[e] + _T * g[e]) * go(H.delete([e]))
        return (
            a[e] * go(H.contract(e))
            + b[e] * go(H.delete([e]))
            + g[e] * go(H.partial_petrial([e]).contract(e))
        )

    return go(G)


def _edge_rank(G: RibbonGraph, order: Sequence[str] | None) -> dict[str, int]:
    if order is None:
        return {e: i for i, e in enumerate(G.edges)}
    order = list(order)
    if sorted(order) != sorted(G.edges):
        raise MultimatroidError("an edge ordering must list every edge exactly once")
    return {e: i for i, e in enumerate(order)}


@dataclass(frozen=True)
class EdgeClassification:
    state: Partition
    block: dict[str, str]
    orientable: dict[str, bool]
    interlaced: frozenset[frozenset[str]]
    active: dict[str, bool]

    def category(self, e: str) -> str:
        if not self.active[e]:
            return "IA"
        return "AO" if self.orientable[e] else "AN"

    def to_json(self) -> dict:
        return {
            "state": {k: sorted(s) for k, s in zip("XYZ", self.state)},
            "edges": {
                e: {
                    "block": self.block[e],
                    "orientable": self.orientable[e],
                    "active": self.active[e],
                    "category": self.category(e),
                }
                for e in sorted(self.block)
            },
            "interlaced": sorted(sorted(p) for p in self.interlaced),
        }


def classify_edges(G: RibbonGraph, state: Partition, order: Sequence[str] | None = None) -> EdgeClassification:
    """Orientability and interlacement of every edge for a quasi-tree state, hence its activity."""
    X, Y, Z = (frozenset(s) for s in state)
    labels = set(G.edges)
    if X | Y | Z != labels or X & Y or X & Z or Y & Z:
        raise PreconditionError("state must be an ordered partition of the edges")
    if G.b_of_state(Y, Z) != G.connected_components():
        raise PreconditionError("state is not a quasi-tree state")
    trace = boundary_trace(G, Y, Z)
    rank = _edge_rank(G, order)
    where: dict[str, list[tuple[int, int]]] = {e: [] for e in labels}
    agree: dict[str, list[bool]] = {e: [] for e in labels}
    for wi, walk in enumerate(trace.walks):
        for pos, vis in enumerate(walk):
            e = vis.edge
            where[e].append((wi, pos))
            first = G.edges[e].halves[0]
            if vis.kind == "edge":
                # the edge's own boundary runs from the first half-edge's left
                # side to the far end and back into its right side
                if vis.tail == (first, LEFT) or vis.head == (first, RIGHT):
                    agree[e].append(True)
                elif vis.head == (first, LEFT) or vis.tail == (first, RIGHT):
                    agree[e].append(False)
            else:
                h = vis.tail[0]
                cw = vis.head[0] == "cw"
                if h == first:
                    agree[e].append(cw)
                else:
                    agree[e].append(cw != G.edges[e].twisted)
    for e in labels:
        if len(where[e]) != 2 or len(agree[e]) != 2:
            raise MultimatroidError(f"edge {e!r} is not met exactly twice by the boundary")
    orientable = {e: agree[e][0] == agree[e][1] for e in labels}
    pairs = set()
    for e in labels:
        (w1, p1), (w2, p2) = where[e]
        if w1 != w2:
            continue
        lo, hi = sorted((p1, p2))
        for f in labels:
            if f <= e:
                continue
            (v1, q1), (v2, q2) = where[f]
            if v1 != w1 or v2 != w1:
                continue
            if (lo < q1 < hi) != (lo < q2 < hi):
                pairs.add(frozenset((e, f)))
    active = {}
    for e in labels:
        active[e] = not any(
            frozenset((e, f)) in pairs for f in labels if rank[f] < rank[e]
        )
    block = {e: "X" if e in X else "Y" if e in Y else "Z" for e in labels}
    return EdgeClassification((X, Y, Z), block, orientable, frozenset(pairs), active)


def state_summand(G: RibbonGraph, state: Partition, alpha=None, beta=None, gamma=None,
                  order: Sequence[str] | None = None) -> Polynomial:
    """The product of the per-edge factors of one quasi-tree state."""
    a, b, g = _wvec(G, alpha), _wvec(G, beta), _wvec(G, gamma)
    cl = classify_edges(G, state, order)
    term = _ONE
    for e in G.edges:
        blk, cat = cl.block[e], cl.category(e)
        own = {"X": a, "Y": b, "Z": g}[blk][e]
        if cat == "IA":
            term = term * own
            continue
        if cat == "AO":
            other = {"X": b, "Y": a, "Z": b}[blk][e]
        else:
            other = {"X": g, "Y": g, "Z": a}[blk][e]
        term = term * ((_T * other).scale(_HALF) + own)
    return term


def ribbon_activities_expansion(G: RibbonGraph, alpha=None, beta=None, gamma=None,
                                order: Sequence[str] | None = None) -> Polynomial:
    total = Polynomial()
    for st in quasi_tree_states(G):
        total = total + state_summand(G, st, alpha, beta, gamma, order)
    return Polynomial.var(T, G.connected_components()) * total
