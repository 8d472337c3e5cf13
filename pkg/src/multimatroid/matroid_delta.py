"""Matroids and delta-matroids, with their 2-matroid lifts.

Both objects are given by explicit set families over a labelled ground set
and are validated on construction. Element orderings are label lists, least
first; ``None`` means ground-set order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import DOT, Carrier, Multimatroid, MultimatroidError, _bits, bar, dot
from .expansions import cocompatible_transversals, transition_direct
from .poly import T, Polynomial, named

X = named("x")
Y = named("y")
W = named("w")
S = named("s")
U = named("u")


def _var(v) -> Polynomial:
    return Polynomial.var(v)


class _GroundSet:
    def __init__(self, elements: Sequence[str]):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise MultimatroidError("element labels must be unique")
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        self.full = (1 << len(elements)) - 1

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for e in labels:
            try:
                m |= 1 << self.index[e]
            except KeyError:
                raise MultimatroidError(f"unknown element {e!r}") from None
        return m

    def labels_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.elements[i] for i in _bits(mask))

    def positions(self, order: Sequence[str] | None) -> list[int]:
        if order is None:
            return list(range(len(self.elements)))
        order = list(order)
        if sorted(order) != sorted(self.elements):
            raise MultimatroidError("an ordering must list every element exactly once")
        rank = {e: i for i, e in enumerate(order)}
        return [rank[e] for e in self.elements]

    def least(self, mask: int, pos: list[int]) -> int:
        return min(_bits(mask), key=lambda i: pos[i])


@dataclass(frozen=True)
class Interval:
    """The Boolean interval ``[lower, upper]`` of subsets of the ground set."""

    anchor: frozenset[str]
    lower: frozenset[str]
    upper: frozenset[str]

    def members(self) -> list[frozenset[str]]:
        free = sorted(self.upper - self.lower)
        return [
            self.lower | frozenset(c)
            for k in range(len(free) + 1)
            for c in itertools.combinations(free, k)
        ]

    def to_json(self) -> dict:
        return {
            "anchor": sorted(self.anchor),
            "lower": sorted(self.lower),
            "upper": sorted(self.upper),
            "members": sorted(sorted(m) for m in self.members()),
        }


def partition_report(ground: Sequence[str], intervals: list[Interval]) -> dict:
    """Whether the intervals' members partition the power set of ``ground``."""
    seen: dict[frozenset, int] = {}
    for iv in intervals:
        for m in iv.members():
            seen[m] = seen.get(m, 0) + 1
    overlaps = sorted(sorted(m) for m, k in seen.items() if k > 1)
    total = 2 ** len(ground)
    missing = total - len(seen)
    return {
        "passed": not overlaps and missing == 0,
        "subsets": total,
        "covered": len(seen),
        "overlaps": overlaps,
        "missing": missing,
    }


# matroids

class Matroid:
    def __init__(self, elements: Sequence[str], bases: Iterable[Iterable[str]], validate: bool = True):
        self.ground = _GroundSet(elements)
        masks = sorted({self.ground.mask(b) for b in bases})
        if not masks:
            raise MultimatroidError("a matroid needs at least one basis")
        self.basis_masks: tuple[int, ...] = tuple(masks)
        self._basis_set = frozenset(masks)
        if validate:
            problem = self._exchange_violation()
            if problem:
                raise MultimatroidError(problem)

    def _exchange_violation(self) -> str | None:
        sizes = {b.bit_count() for b in self.basis_masks}
        if len(sizes) != 1:
            return "bases must be equicardinal"
        for b1 in self.basis_masks:
            for b2 in self.basis_masks:
                for x in _bits(b1 & ~b2):
                    if not any(((b1 & ~(1 << x)) | (1 << y)) in self._basis_set for y in _bits(b2 & ~b1)):
                        return "basis exchange fails"
        return None

    @property
    def elements(self) -> tuple[str, ...]:
        return self.ground.elements

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self.bases() == other.bases()

    def __hash__(self):
        return hash(frozenset(self.bases()))

    def __repr__(self):
        return f"Matroid({len(self.elements)} elements, {len(self.basis_masks)} bases)"

    def bases(self) -> set[frozenset[str]]:
        return {self.ground.labels_of(b) for b in self.basis_masks}

    def rank_mask(self, mask: int) -> int:
        return max((b & mask).bit_count() for b in self.basis_masks)

    def rank(self, labels: Iterable[str] = ()) -> int:
        return self.rank_mask(self.ground.mask(labels))

    @property
    def full_rank(self) -> int:
        return self.basis_masks[0].bit_count()

    def dual(self) -> "Matroid":
        full = self.ground.full
        return Matroid(self.elements, [self.ground.labels_of(full & ~b) for b in self.basis_masks], validate=False)

    def _circuit_masks(self) -> list[int]:
        out = []
        for m in range(self.ground.full + 1):
            k = m.bit_count()
            if self.rank_mask(m) == k:
                continue
            if all(self.rank_mask(m & ~(1 << i)) == k - 1 for i in _bits(m)):
                out.append(m)
        return out

    def circuits(self) -> set[frozenset[str]]:
        return {self.ground.labels_of(m) for m in self._circuit_masks()}

    def cocircuits(self) -> set[frozenset[str]]:
        return self.dual().circuits()

    def _basis(self, B) -> int:
        b = B if isinstance(B, int) else self.ground.mask(B)
        if b not in self._basis_set:
            raise MultimatroidError(f"{sorted(self.ground.labels_of(b))} is not a basis")
        return b

    def _activity_masks(self, b: int, pos: list[int]) -> tuple[int, int]:
        ints = ext = 0
        for e in range(len(self.elements)):
            bit = 1 << e
            if b & bit:
                # fundamental cocircuit: e and the f outside B that replace it
                co = bit
                for f in _bits(self.ground.full & ~b):
                    if ((b & ~bit) | (1 << f)) in self._basis_set:
                        co |= 1 << f
                if self.ground.least(co, pos) == e:
                    ints |= bit
            else:
                circ = bit
                for f in _bits(b):
                    if ((b & ~(1 << f)) | bit) in self._basis_set:
                        circ |= 1 << f
                if self.ground.least(circ, pos) == e:
                    ext |= bit
        return ints, ext

    def activities(self, B: Iterable[str], order: Sequence[str] | None = None):
        """``(internally active, externally active)`` elements for basis ``B``."""
        ints, ext = self._activity_masks(self._basis(B), self.ground.positions(order))
        return self.ground.labels_of(ints), self.ground.labels_of(ext)

    def tutte_rank_def(self) -> Polynomial:
        """Subset sum ``(x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))``."""
        xm1, ym1 = _var(X) - 1, _var(Y) - 1
        r = self.full_rank
        counts: dict[tuple[int, int], int] = {}
        for m in range(self.ground.full + 1):
            ra = self.rank_mask(m)
            key = (r - ra, m.bit_count() - ra)
            counts[key] = counts.get(key, 0) + 1
        return sum((xm1 ** i * ym1 ** j * c for (i, j), c in counts.items()), Polynomial())

    def tutte_activities(self, order: Sequence[str] | None = None) -> Polynomial:
        pos = self.ground.positions(order)
        total = Polynomial()
        for b in self.basis_masks:
            i, e = self._activity_masks(b, pos)
            total = total + _var(X) ** i.bit_count() * _var(Y) ** e.bit_count()
        return total

    def crapo_intervals(self, order: Sequence[str] | None = None) -> list[Interval]:
        pos = self.ground.positions(order)
        g = self.ground
        out = []
        for b in self.basis_masks:
            i, e = self._activity_masks(b, pos)
            out.append(Interval(g.labels_of(b), g.labels_of(b & ~i), g.labels_of(b | e)))
        return out

    def _compatible(self, a: int, circuits: list[int], pos: list[int]) -> bool:
        return not any(a & c == 1 << self.ground.least(c, pos) for c in circuits)

    def kochol_sets(self, order: Sequence[str] | None = None) -> set[frozenset[str]]:
        """``A`` with ``A`` compatible in the dual and ``E - A`` compatible in ``M``."""
        pos = self.ground.positions(order)
        circ = self._circuit_masks()
        cocirc = [self.ground.mask(c) for c in self.cocircuits()]
        full = self.ground.full
        return {
            self.ground.labels_of(a)
            for a in range(full + 1)
            if self._compatible(a, cocirc, pos) and self._compatible(full & ~a, circ, pos)
        }

    def kochol_expansion(self, order: Sequence[str] | None = None) -> Polynomial:
        r = self.full_rank
        total = Polynomial()
        for a in self.kochol_sets(order):
            m = self.ground.mask(a)
            ra = self.rank_mask(m)
            total = total + _var(X) ** (r - ra) * _var(Y) ** (m.bit_count() - ra)
        return total

    def as_delta(self) -> "DeltaMatroid":
        return DeltaMatroid(self.elements, self.bases())

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "bases": sorted(sorted(b, key=self.ground.index.get) for b in self.bases()),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Matroid":
        try:
            return cls(data["elements"], data["bases"])
        except (KeyError, TypeError):
            raise MultimatroidError("matroid documents need 'elements' and 'bases'") from None


def _two_carrier(elements: Sequence[str]) -> Carrier:
    return Carrier([[dot(e), bar(e)] for e in elements], list(elements))


def lift_matroid(M: Matroid) -> Multimatroid:
    """The 2-matroid with bases ``dot(B) + bar(E - B)``."""
    return lift_delta(M.as_delta())


def tutte_via_transition(M: Matroid) -> dict:
    """Compare both sides of the Tutte/transition identity in ``s`` and ``u``.

    With ``x = s^2`` and ``y = u^2`` the identity reads
    ``s^(|E|-r) u^r T(M; s^2+1, u^2+1) = Q(Z(M); x_dot=u, x_bar=s, t=su)``.
    """
    s, u = _var(S), _var(U)
    r, n = M.full_rank, len(M.elements)
    tutte = M.tutte_rank_def().specialize({X: s * s + 1, Y: u * u + 1})
    lhs = s ** (n - r) * u ** r * tutte
    Z = lift_matroid(M)
    weights = {}
    for e in M.elements:
        weights[dot(e)] = u
        weights[bar(e)] = s
    rhs = transition_direct(Z, weights).specialize({T: s * u})
    return {"passed": lhs == rhs, "lhs": str(lhs), "rhs": str(rhs)}


# delta-matroids

class DeltaMatroid:
    def __init__(self, elements: Sequence[str], feasible: Iterable[Iterable[str]], validate: bool = True):
        self.ground = _GroundSet(elements)
        masks = sorted({self.ground.mask(f) for f in feasible})
        if not masks:
            raise MultimatroidError("a delta-matroid needs at least one feasible set")
        self.feasible_masks: tuple[int, ...] = tuple(masks)
        self._feasible_set = frozenset(masks)
        if validate and not self.delta_check():
            raise MultimatroidError("symmetric exchange fails")

    @property
    def elements(self) -> tuple[str, ...]:
        return self.ground.elements

    def __eq__(self, other):
        if not isinstance(other, DeltaMatroid):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self.feasible() == other.feasible()

    def __hash__(self):
        return hash(frozenset(self.feasible()))

    def __repr__(self):
        return f"DeltaMatroid({len(self.elements)} elements, {len(self.feasible_masks)} feasible)"

    def feasible(self) -> set[frozenset[str]]:
        return {self.ground.labels_of(f) for f in self.feasible_masks}

    def is_feasible_mask(self, m: int) -> bool:
        return m in self._feasible_set

    def exchange_violations(self) -> list[dict]:
        out = []
        fs = self._feasible_set
        g = self.ground
        for f1 in self.feasible_masks:
            for f2 in self.feasible_masks:
                d = f1 ^ f2
                for u in _bits(d):
                    if not any((f1 ^ (1 << u) ^ ((1 << v) if v != u else 0)) in fs for v in _bits(d)):
                        out.append({
                            "F1": sorted(g.labels_of(f1)),
                            "F2": sorted(g.labels_of(f2)),
                            "u": g.elements[u],
                        })
        return out

    def delta_check(self) -> bool:
        return not self.exchange_violations()

    def distance_mask(self, x: int) -> int:
        return min((f ^ x).bit_count() for f in self.feasible_masks)

    def distance(self, X_: Iterable[str]) -> int:
        return self.distance_mask(self.ground.mask(X_))

    def twist(self, A: Iterable[str]) -> "DeltaMatroid":
        a = self.ground.mask(A)
        return DeltaMatroid(self.elements, [self.ground.labels_of(f ^ a) for f in self.feasible_masks], validate=False)

    def delta_transition(self) -> Polynomial:
        """Sum of ``w^|E-A| x^|A| t^d(A)`` over all subsets ``A``."""
        n = len(self.elements)
        counts: dict[tuple[int, int], int] = {}
        for a in range(self.ground.full + 1):
            key = (a.bit_count(), self.distance_mask(a))
            counts[key] = counts.get(key, 0) + 1
        w, x, t = _var(W), _var(X), _var(T)
        return sum((w ** (n - k) * x ** k * t ** d * c for (k, d), c in counts.items()), Polynomial())

    def _activity_masks(self, f: int, pos: list[int]) -> tuple[int, int]:
        fs = self._feasible_set
        ints = ext = 0
        for e in range(len(self.elements)):
            be = 1 << e
            if (f ^ be) in fs:
                continue
            smaller = [g for g in range(len(self.elements)) if pos[g] < pos[e]]
            if any((f ^ be ^ (1 << g)) in fs for g in smaller):
                continue
            if f & be:
                ints |= be
            else:
                ext |= be
        return ints, ext

    def _feasible(self, F) -> int:
        m = F if isinstance(F, int) else self.ground.mask(F)
        if m not in self._feasible_set:
            raise MultimatroidError(f"{sorted(self.ground.labels_of(m))} is not feasible")
        return m

    def activities(self, F: Iterable[str], order: Sequence[str] | None = None):
        """Orientable elements with no smaller interlaced element, split by membership in ``F``."""
        ints, ext = self._activity_masks(self._feasible(F), self.ground.positions(order))
        return self.ground.labels_of(ints), self.ground.labels_of(ext)

    def morse_expansion(self, order: Sequence[str] | None = None) -> Polynomial:
        """Sum over feasible ``F`` of ``x^|F| w^|E-F| (1+(w/x)t)^|int| (1+(x/w)t)^|ext|``, cleared of fractions."""
        pos = self.ground.positions(order)
        w, x, t = _var(W), _var(X), _var(T)
        n = len(self.elements)
        total = Polynomial()
        for f in self.feasible_masks:
            i, e = self._activity_masks(f, pos)
            ni, ne, k = i.bit_count(), e.bit_count(), f.bit_count()
            total = total + (
                x ** (k - ni) * (x + w * t) ** ni * w ** (n - k - ne) * (w + x * t) ** ne
            )
        return total

    def intervals(self, order: Sequence[str] | None = None) -> list[Interval]:
        pos = self.ground.positions(order)
        g = self.ground
        out = []
        for f in self.feasible_masks:
            i, e = self._activity_masks(f, pos)
            out.append(Interval(g.labels_of(f), g.labels_of(f & ~i), g.labels_of(f | e)))
        return out

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "feasible": sorted(
                (sorted(f, key=self.ground.index.get) for f in self.feasible()),
                key=lambda f: (len(f), [self.ground.index[e] for e in f]),
            ),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DeltaMatroid":
        try:
            return cls(data["elements"], data["feasible"])
        except (KeyError, TypeError):
            raise MultimatroidError("delta-matroid documents need 'elements' and 'feasible'") from None


def lift_delta(D: DeltaMatroid) -> Multimatroid:
    """The 2-matroid with bases ``dot(F) + bar(E - F)``."""
    els = D.elements
    carrier = _two_carrier(els)
    bases = []
    for f in D.feasible_masks:
        bases.append([dot(e) if f >> i & 1 else bar(e) for i, e in enumerate(els)])
    return Multimatroid(carrier, bases)


def project(Z: Multimatroid, transversal: Iterable[str]) -> DeltaMatroid:
    """The delta-matroid of classes where a basis agrees with ``transversal``."""
    c = Z.carrier
    if any(len(cl) != 2 for cl in c.classes):
        raise MultimatroidError("projection needs a 2-matroid")
    tm = c.mask(transversal)
    if not c.is_transversal(tm):
        raise MultimatroidError("projection needs a transversal")
    feasible = []
    for b in Z.basis_masks:
        if not c.is_transversal(b):
            raise MultimatroidError("projection needs transversal bases")
        agree = b & tm
        feasible.append([c.names[c.class_of[i]] for i in _bits(agree)])
    return DeltaMatroid(c.names, feasible, validate=False)


def delta_from_lift(Z: Multimatroid) -> DeltaMatroid:
    """Inverse of :func:`lift_delta`, projecting onto the dotted slots."""
    return project(Z, [cl[0] for cl in Z.carrier.classes])


def kochol_cocompatible_agreement(M: Matroid, order: Sequence[str] | None = None) -> bool:
    """``A`` is a Kochol set iff ``dot(A) + bar(E - A)`` is cocompatible in ``Z(M)``."""
    Z = lift_matroid(M)
    comp = set()
    for m in cocompatible_transversals(Z, order):
        comp.add(frozenset(lab[: -len(DOT)] for lab in Z.carrier.labels_of(m) if lab.endswith(DOT)))
    return comp == M.kochol_sets(order)


def delta_weights(D: DeltaMatroid) -> dict[str, Polynomial]:
    """Weights making ``Q(Z(D))`` the delta-matroid transition polynomial."""
    w, x = _var(W), _var(X)
    out = {}
    for e in D.elements:
        out[dot(e)] = x
        out[bar(e)] = w
    return out

