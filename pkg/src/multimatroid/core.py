"""Carriers and multimatroids given by an explicit list of bases.

Elements are identified by string labels and skew classes by string names.
Internally a subtransversal is an ``int`` bitmask over the elements in
class-major order; the public methods accept and return label sets.

The rank of a subtransversal ``S`` is ``max |B & S|`` over the bases ``B``;
everything else (nullity, circuits, minors) is derived from that oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import kernels


class MultimatroidError(ValueError):
    """Malformed input: bad carrier, non-subtransversal, unknown label."""


class PreconditionError(ValueError):
    """An operation was called outside the hypotheses it needs."""


# Slot suffixes for lifted objects: e. / e- / e^ stand for the dotted,
# barred and hatted copies of a ground-set element e.
DOT, BAR, HAT = ".", "-", "^"


def dot(e: str) -> str:
    return e + DOT


def bar(e: str) -> str:
    return e + BAR


def hat(e: str) -> str:
    return e + HAT


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Carrier:
    """A partition of a finite set of labels into named skew classes."""

    def __init__(self, classes: Sequence[Sequence[str]], names: Sequence[str] | None = None):
        classes = tuple(tuple(c) for c in classes)
        if names is None:
            names = tuple(f"w{i + 1}" for i in range(len(classes)))
        names = tuple(names)
        if len(names) != len(classes):
            raise MultimatroidError("one name per skew class is required")
        if len(set(names)) != len(names):
            raise MultimatroidError("skew-class names must be unique")
        labels: list[str] = []
        for c in classes:
            if not c:
                raise MultimatroidError("skew classes must be non-empty")
            labels.extend(c)
        if len(set(labels)) != len(labels):
            raise MultimatroidError("element labels must be unique across the carrier")
        self.classes: tuple[tuple[str, ...], ...] = classes
        self.names: tuple[str, ...] = names
        self.labels: tuple[str, ...] = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.class_index = {n: i for i, n in enumerate(names)}
        self.class_of: tuple[int, ...] = tuple(
            ci for ci, c in enumerate(classes) for _ in c
        )
        masks = []
        pos = 0
        for c in classes:
            masks.append(((1 << len(c)) - 1) << pos)
            pos += len(c)
        self.class_masks: tuple[int, ...] = tuple(masks)
        self.full_mask = (1 << len(labels)) - 1

    def __len__(self) -> int:
        return len(self.classes)

    def __eq__(self, other):
        if not isinstance(other, Carrier):
            return NotImplemented
        return self.classes == other.classes and self.names == other.names

    def __hash__(self):
        return hash((self.classes, self.names))

    def __repr__(self):
        body = ", ".join(f"{n}={{{', '.join(c)}}}" for n, c in zip(self.names, self.classes))
        return f"Carrier({body})"

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def q(self) -> int | None:
        """The common class size, or ``None`` if sizes differ (or no classes)."""
        s = set(self.sizes)
        return s.pop() if len(s) == 1 else None

    def is_degenerate(self) -> bool:
        return any(len(c) < 2 for c in self.classes)

    # label <-> mask
    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            try:
                m |= 1 << self.index[lab]
            except KeyError:
                raise MultimatroidError(f"unknown element {lab!r}") from None
        return m

    def labels_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.labels[i] for i in _bits(mask))

    def sorted_labels(self, mask: int) -> list[str]:
        return [self.labels[i] for i in _bits(mask)]

    def is_subtransversal(self, mask: int) -> bool:
        return all((mask & cm).bit_count() <= 1 for cm in self.class_masks)

    def is_transversal(self, mask: int) -> bool:
        return all((mask & cm).bit_count() == 1 for cm in self.class_masks)

    def subtransversal(self, labels: Iterable[str]) -> int:
        m = self.mask(labels)
        if not self.is_subtransversal(m):
            raise MultimatroidError(
                f"{sorted(self.labels_of(m))} meets some skew class more than once"
            )
        return m

    def element_at(self, mask: int, ci: int) -> int | None:
        """Bit index of the element of ``mask`` in class ``ci``."""
        m = mask & self.class_masks[ci]
        return m.bit_length() - 1 if m else None

    def class_bits(self, ci: int) -> list[int]:
        return list(_bits(self.class_masks[ci]))

    def classes_met(self, mask: int) -> list[int]:
        return [ci for ci, cm in enumerate(self.class_masks) if mask & cm]

    def transversals(self) -> Iterator[int]:
        opts = [[1 << b for b in self.class_bits(ci)] for ci in range(len(self))]
        for combo in itertools.product(*opts):
            yield sum(combo)

    def subtransversals(self) -> Iterator[int]:
        opts = [[0] + [1 << b for b in self.class_bits(ci)] for ci in range(len(self))]
        for combo in itertools.product(*opts):
            yield sum(combo)

    def drop_class(self, ci: int) -> "Carrier":
        keep = [i for i in range(len(self)) if i != ci]
        return Carrier([self.classes[i] for i in keep], [self.names[i] for i in keep])

    def remap(self, mask: int, other: "Carrier") -> int:
        """Re-express ``mask`` over ``other``, which must contain its labels."""
        out = 0
        for i in _bits(mask):
            out |= 1 << other.index[self.labels[i]]
        return out


def class_positions(carrier: Carrier, order: Sequence[str] | None) -> list[int]:
    """Position of each class of ``carrier`` under ``order`` (least first).

    ``order`` lists skew-class names; names absent from the carrier are
    ignored, so an ordering of a multimatroid also orders its minors.
    ``None`` means carrier order.
    """
    if order is None:
        return list(range(len(carrier)))
    rank = {}
    for name in order:
        if name in carrier.class_index and name not in rank:
            rank[name] = len(rank)
    missing = [n for n in carrier.names if n not in rank]
    if missing:
        raise MultimatroidError(f"ordering omits skew classes {missing}")
    return [rank[n] for n in carrier.names]


@dataclass
class AxiomReport:
    valid: bool
    r1_violations: list[dict] = field(default_factory=list)
    r2_violations: list[dict] = field(default_factory=list)
    basis_violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "r1_violations": self.r1_violations,
            "r2_violations": self.r2_violations,
            "basis_violations": self.basis_violations,
        }


class Multimatroid:
    """A multimatroid on ``carrier`` with the given bases.

    Bases are taken as given; :meth:`check_axioms` tells whether they really
    define a multimatroid.
    """

    def __init__(self, carrier: Carrier, bases: Iterable[Iterable[str] | int]):
        self.carrier = carrier
        masks = set()
        for b in bases:
            m = b if isinstance(b, int) else carrier.subtransversal(b)
            if not carrier.is_subtransversal(m):
                raise MultimatroidError("every basis must be a subtransversal")
            masks.add(m)
        if not masks:
            raise MultimatroidError("a multimatroid needs at least one basis")
        self.basis_masks: tuple[int, ...] = tuple(sorted(masks))
        self._basis_set = frozenset(masks)

    # construction helpers
    @classmethod
    def from_lists(
        cls,
        classes: Sequence[Sequence[str]],
        bases: Iterable[Iterable[str]],
        names: Sequence[str] | None = None,
    ) -> "Multimatroid":
        return cls(Carrier(classes, names), bases)

    @classmethod
    def free(cls, carrier: Carrier) -> "Multimatroid":
        """Every transversal is a basis."""
        return cls(carrier, list(carrier.transversals()))

    @classmethod
    def from_independence(cls, carrier: Carrier, independent) -> "Multimatroid":
        """Bases as the maximal subtransversals accepted by ``independent``.

        ``independent`` maps a mask to bool and must be hereditary.
        """
        n = len(carrier)
        found: list[int] = []

        def grow(ci: int, mask: int) -> None:
            if ci == n:
                found.append(mask)
                return
            grow(ci + 1, mask)
            for b in carrier.class_bits(ci):
                m = mask | (1 << b)
                if independent(m):
                    grow(ci + 1, m)

        grow(0, 0)
        indep = set(found)
        maximal = []
        for m in indep:
            extendable = False
            for ci in range(n):
                if m & carrier.class_masks[ci]:
                    continue
                if any((m | (1 << b)) in indep for b in carrier.class_bits(ci)):
                    extendable = True
                    break
            if not extendable:
                maximal.append(m)
        return cls(carrier, maximal)

    # basic queries
    def __repr__(self):
        return f"Multimatroid({len(self.carrier)} classes, {len(self.basis_masks)} bases)"

    def __eq__(self, other):
        if not isinstance(other, Multimatroid):
            return NotImplemented
        return self.carrier == other.carrier and self._basis_set == other._basis_set

    def __hash__(self):
        return hash((self.carrier, self._basis_set))

    def same_bases(self, other: "Multimatroid") -> bool:
        """Equality as families of label sets, ignoring class order and names."""
        return self.bases() == other.bases()

    @property
    def classes(self):
        return self.carrier.classes

    @property
    def names(self):
        return self.carrier.names

    def bases(self) -> set[frozenset[str]]:
        return {self.carrier.labels_of(b) for b in self.basis_masks}

    def sorted_bases(self) -> list[list[str]]:
        return [self.carrier.sorted_labels(b) for b in self.basis_masks]

    def is_basis_mask(self, mask: int) -> bool:
        return mask in self._basis_set

    def is_basis(self, labels: Iterable[str]) -> bool:
        return self.carrier.mask(labels) in self._basis_set

    def is_degenerate(self) -> bool:
        return self.carrier.is_degenerate()

    # rank machinery
    def rank_mask(self, mask: int) -> int:
        return kernels.max_intersection(self.basis_masks, mask)

    def nullity_mask(self, mask: int) -> int:
        return mask.bit_count() - self.rank_mask(mask)

    def is_independent_mask(self, mask: int) -> bool:
        return self.rank_mask(mask) == mask.bit_count()

    def rank(self, labels: Iterable[str]) -> int:
        return self.rank_mask(self.carrier.subtransversal(labels))

    def nullity(self, labels: Iterable[str]) -> int:
        return self.nullity_mask(self.carrier.subtransversal(labels))

    @cached_property
    def rank_table(self) -> dict[int, int]:
        """Rank of every subtransversal."""
        subs = list(self.carrier.subtransversals())
        return dict(zip(subs, kernels.max_intersections(self.basis_masks, subs)))

    @cached_property
    def transversal_nullities(self) -> dict[int, int]:
        ts = list(self.carrier.transversals())
        ranks = kernels.max_intersections(self.basis_masks, ts)
        return {t: t.bit_count() - r for t, r in zip(ts, ranks)}

    # axioms
    def check_axioms(self, max_witnesses: int | None = None) -> AxiomReport:
        """Check (R1) on every transversal and (R2) on every subtransversal.

        (R1) is checked as: rank of the empty set is 0, adding one element
        raises the rank by 0 or 1, and the local submodular inequality
        ``r(A+x) + r(A+y) >= r(A+x+y) + r(A)``.
        """
        c = self.carrier
        r = self.rank_table
        rep = AxiomReport(valid=True)

        def add(lst, item):
            if max_witnesses is None or len(lst) < max_witnesses:
                lst.append(item)

        if r[0] != 0:
            add(rep.r1_violations, {"kind": "empty", "set": [], "rank": r[0]})
        n = len(c)
        for s, rs in r.items():
            free_classes = [ci for ci in range(n) if not s & c.class_masks[ci]]
            for ci in free_classes:
                bits = c.class_bits(ci)
                for b in bits:
                    sx = s | (1 << b)
                    d = r[sx] - rs
                    if d not in (0, 1):
                        add(rep.r1_violations, {
                            "kind": "unit_increase",
                            "set": c.sorted_labels(s),
                            "element": c.labels[b],
                            "increase": d,
                        })
                for x, y in itertools.combinations(bits, 2):
                    lhs = r[s | (1 << x)] + r[s | (1 << y)] - 2 * rs
                    if lhs < 1:
                        add(rep.r2_violations, {
                            "set": c.sorted_labels(s),
                            "pair": [c.labels[x], c.labels[y]],
                            "value": lhs,
                        })
            for ci, cj in itertools.combinations(free_classes, 2):
                for x in c.class_bits(ci):
                    for y in c.class_bits(cj):
                        sx, sy = s | (1 << x), s | (1 << y)
                        if r[sx] + r[sy] < r[sx | sy] + rs:
                            add(rep.r1_violations, {
                                "kind": "submodular",
                                "set": c.sorted_labels(s),
                                "pair": [c.labels[x], c.labels[y]],
                            })
        for b in self.basis_masks:
            if r[b] != b.bit_count():
                add(rep.basis_violations, {"basis": c.sorted_labels(b), "issue": "dependent"})
                continue
            for ci in range(n):
                if b & c.class_masks[ci]:
                    continue
                for x in c.class_bits(ci):
                    if r[b | (1 << x)] == b.bit_count() + 1:
                        add(rep.basis_violations, {
                            "basis": c.sorted_labels(b),
                            "issue": "not maximal",
                            "extends_by": c.labels[x],
                        })
        rep.valid = not (rep.r1_violations or rep.r2_violations or rep.basis_violations)
        return rep

    # circuits
    @cached_property
    def circuit_masks(self) -> tuple[int, ...]:
        r = self.rank_table
        out = []
        for s, rs in r.items():
            k = s.bit_count()
            if rs == k:
                continue
            if all(r[s ^ (1 << i)] == k - 1 for i in _bits(s)):
                out.append(s)
        return tuple(sorted(out))

    def circuits(self) -> set[frozenset[str]]:
        return {self.carrier.labels_of(m) for m in self.circuit_masks}

    def fundamental_circuit_mask(self, basis: int, ci: int) -> tuple[int, int] | None:
        """``(circuit, underline bit)`` for the circuit inside basis + class ``ci``."""
        c = self.carrier
        rest = basis & ~c.class_masks[ci]
        for f in c.class_bits(ci):
            if basis >> f & 1:
                continue
            s = rest | (1 << f)
            if self.is_independent_mask(s):
                continue
            circ = 1 << f
            for i in _bits(rest):
                if self.is_independent_mask(s ^ (1 << i)):
                    circ |= 1 << i
            return circ, f
        return None

    def fundamental_circuit(self, basis: Iterable[str], cls: str):
        """The circuit in ``basis`` union the class named ``cls``, if any.

        Returns ``(circuit_labels, underline_label)`` or ``None``.
        """
        c = self.carrier
        b = c.mask(basis)
        if b not in self._basis_set:
            raise MultimatroidError(f"{sorted(c.labels_of(b))} is not a basis")
        try:
            ci = c.class_index[cls]
        except KeyError:
            raise MultimatroidError(f"unknown skew class {cls!r}") from None
        res = self.fundamental_circuit_mask(b, ci)
        if res is None:
            return None
        circ, f = res
        return c.labels_of(circ), c.labels[f]

    # singularity and tightness
    def singular_element_bits(self) -> list[int]:
        return [i for i in range(len(self.carrier.labels)) if self.rank_mask(1 << i) == 0]

    def singular_elements(self) -> set[str]:
        return {self.carrier.labels[i] for i in self.singular_element_bits()}

    def singular_classes(self) -> set[str]:
        c = self.carrier
        return {c.names[c.class_of[i]] for i in self.singular_element_bits()}

    def is_tight(self) -> bool:
        if self.is_degenerate():
            return False
        return all(
            self.fundamental_circuit_mask(b, ci) is not None
            for b in self.basis_masks
            for ci in range(len(self.carrier))
        )

    # minors
    def minor(self, label: str) -> "Multimatroid":
        """Elementary minor by ``label``: drop its class, rank ``r(S+u) - r(u)``."""
        c = self.carrier
        if label not in c.index:
            raise MultimatroidError(f"unknown element {label!r}")
        u = 1 << c.index[label]
        ci = c.class_of[c.index[label]]
        sub = c.drop_class(ci)
        ru = self.rank_mask(u)

        def independent(m: int) -> bool:
            big = sub.remap(m, c) | u
            return self.rank_mask(big) - ru == m.bit_count()

        return Multimatroid.from_independence(sub, independent)

    def restriction(self, cls: str) -> "Multimatroid":
        """Delete the class named ``cls`` and restrict the rank function."""
        c = self.carrier
        try:
            ci = c.class_index[cls]
        except KeyError:
            raise MultimatroidError(f"unknown skew class {cls!r}") from None
        sub = c.drop_class(ci)

        def independent(m: int) -> bool:
            return self.rank_mask(sub.remap(m, c)) == m.bit_count()

        return Multimatroid.from_independence(sub, independent)

    def class_name_of(self, label: str) -> str:
        c = self.carrier
        return c.names[c.class_of[c.index[label]]]

    def require_non_degenerate(self, what: str) -> None:
        if self.is_degenerate():
            raise PreconditionError(f"{what} needs a non-degenerate multimatroid")

    def to_json(self) -> dict:
        return {
            "names": list(self.carrier.names),
            "skew_classes": [list(cl) for cl in self.carrier.classes],
            "bases": self.sorted_bases(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Multimatroid":
        try:
            classes = data["skew_classes"]
            bases = data["bases"]
        except (KeyError, TypeError):
            raise MultimatroidError("multimatroid documents need 'skew_classes' and 'bases'") from None
        return cls.from_lists(classes, bases, data.get("names"))
