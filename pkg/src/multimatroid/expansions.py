"""Transition polynomial pipelines and the structure theory of bases.

Every function taking ``order`` accepts a sequence of skew-class names,
least first, or ``None`` for carrier order. ``weights`` maps element labels
to scalars or polynomials; missing labels (or ``weights=None``) weigh 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import Multimatroid, MultimatroidError, PreconditionError, _bits, class_positions
from .poly import T, Polynomial, weight

Order = Sequence[str] | None
Weights = Mapping[str, "Polynomial | int | Fraction"] | None

_ONE = Polynomial.const(1)
_T = Polynomial.var(T)


def symbolic_weights(Z: Multimatroid) -> dict[str, Polynomial]:
    """One free variable ``x[label]`` per element."""
    return {lab: Polynomial.var(weight(lab)) for lab in Z.carrier.labels}


def _weight_vector(Z: Multimatroid, weights: Weights) -> list[Polynomial]:
    out = []
    for lab in Z.carrier.labels:
        w = 1 if weights is None else weights.get(lab, 1)
        out.append(w if isinstance(w, Polynomial) else Polynomial.const(w))
    return out


def _x(wv: list[Polynomial], mask: int) -> Polynomial:
    p = _ONE
    for i in _bits(mask):
        p = p * wv[i]
    return p


def _unit(weights: Weights) -> bool:
    return weights is None or all(
        not isinstance(w, Polynomial) and w == 1 for w in weights.values()
    )


# direct state sum and recursion

def transition_direct(Z: Multimatroid, weights: Weights = None) -> Polynomial:
    """Sum of ``t^n(T) x_T`` over all transversals ``T``."""
    table = Z.transversal_nullities
    if _unit(weights):
        counts: dict[int, int] = {}
        for n in table.values():
            counts[n] = counts.get(n, 0) + 1
        return sum((Polynomial.var(T, n).scale(c) for n, c in counts.items()), Polynomial())
    wv = _weight_vector(Z, weights)
    by_n: dict[int, Polynomial] = {}
    for tmask, n in table.items():
        by_n[n] = by_n.get(n, Polynomial()) + _x(wv, tmask)
    return sum((Polynomial.var(T, n) * p for n, p in by_n.items()), Polynomial())


def transition_recursive(Z: Multimatroid, weights: Weights = None) -> Polynomial:
    """Eliminate the last skew class: singular classes factor, others sum over minors."""
    memo: dict[tuple, Polynomial] = {}

    def wt(lab: str) -> Polynomial:
        w = 1 if weights is None else weights.get(lab, 1)
        return w if isinstance(w, Polynomial) else Polynomial.const(w)

    def go(M: Multimatroid) -> Polynomial:
        c = M.carrier
        if len(c) == 0:
            return _ONE
        key = (c.classes, frozenset(M.basis_masks))
        if key in memo:
            return memo[key]
        ci = len(c) - 1
        bits = c.class_bits(ci)
        singular = [b for b in bits if M.rank_mask(1 << b) == 0]
        if singular:
            e = singular[0]
            factor = _T * wt(c.labels[e])
            for b in bits:
                if b != e:
                    factor = factor + wt(c.labels[b])
            res = factor * go(M.restriction(c.names[ci]))
        else:
            res = Polynomial()
            for b in bits:
                res = res + wt(c.labels[b]) * go(M.minor(c.labels[b]))
        memo[key] = res
        return res

    return go(Z)


# basis activities

@dataclass(frozen=True)
class ActivityReport:
    basis: frozenset[str]
    active: frozenset[str]
    inactive: frozenset[str]
    underline: dict[str, str]

    def to_json(self) -> dict:
        return {
            "transversal": sorted(self.basis),
            "active": sorted(self.active),
            "inactive": sorted(self.inactive),
            "underline": dict(sorted(self.underline.items())),
        }


def _min_bit(Z: Multimatroid, mask: int, pos: list[int]) -> int:
    cls = Z.carrier.class_of
    return min(_bits(mask), key=lambda i: pos[cls[i]])


def _basis_activity(Z: Multimatroid, b: int, pos: list[int]) -> dict[int, int]:
    """Active class index -> underline bit."""
    cls = Z.carrier.class_of
    out = {}
    for ci in range(len(Z.carrier)):
        fc = Z.fundamental_circuit_mask(b, ci)
        if fc is None:
            continue
        circ, f = fc
        if cls[_min_bit(Z, circ, pos)] == ci:
            out[ci] = f
    return out


def _report(Z: Multimatroid, mask: int, act: dict[int, int]) -> ActivityReport:
    c = Z.carrier
    active = frozenset(c.names[ci] for ci in act)
    return ActivityReport(
        basis=c.labels_of(mask),
        active=active,
        inactive=frozenset(c.names) - active,
        underline={c.names[ci]: c.labels[f] for ci, f in act.items()},
    )


def _basis_mask(Z: Multimatroid, B) -> int:
    b = B if isinstance(B, int) else Z.carrier.mask(B)
    if not Z.is_basis_mask(b):
        raise PreconditionError(f"{sorted(Z.carrier.labels_of(b))} is not a basis")
    return b


def basis_activities(Z: Multimatroid, B: Iterable[str], order: Order = None) -> ActivityReport:
    Z.require_non_degenerate("basis activities")
    b = _basis_mask(Z, B)
    return _report(Z, b, _basis_activity(Z, b, class_positions(Z.carrier, order)))


def all_basis_activities(Z: Multimatroid, order: Order = None) -> dict[int, dict[int, int]]:
    Z.require_non_degenerate("basis activities")
    pos = class_positions(Z.carrier, order)
    return {b: _basis_activity(Z, b, pos) for b in Z.basis_masks}


def activities_expansion(Z: Multimatroid, weights: Weights = None, order: Order = None) -> Polynomial:
    """Sum over bases; an active class ``w`` contributes ``t x_under/(|w|-1) + x_{B_w}``."""
    acts = all_basis_activities(Z, order)
    c = Z.carrier
    wv = _weight_vector(Z, weights)
    total = Polynomial()
    for b, act in acts.items():
        term = _ONE
        for ci in range(len(c)):
            own = wv[c.element_at(b, ci)]
            if ci in act:
                own = (_T * wv[act[ci]]).scale(Fraction(1, len(c.classes[ci]) - 1)) + own
            term = term * own
        total = total + term
    return total


# Boolean intervals

@dataclass(frozen=True)
class IntervalHZ:
    basis: frozenset[str]
    inside_active: frozenset[str]
    outside_active: frozenset[str]
    members: frozenset[frozenset[str]]

    def to_json(self) -> dict:
        return {
            "basis": sorted(self.basis),
            "inside_active": sorted(self.inside_active),
            "outside_active": sorted(self.outside_active),
            "members": sorted(sorted(m) for m in self.members),
        }


def _interval_masks(Z: Multimatroid, b: int, act: dict[int, int]) -> list[int]:
    c = Z.carrier
    base = b
    choices = []
    for ci, f in act.items():
        own = 1 << c.element_at(b, ci)
        choices.append((own, 1 << f))
    out = []
    for picks in itertools.product(*choices):
        m = base
        for (own, _), p in zip(choices, picks):
            m = (m & ~own) | p
        out.append(m)
    return out


def _interval(Z: Multimatroid, b: int, act: dict[int, int]) -> IntervalHZ:
    c = Z.carrier
    inside = frozenset(c.labels[c.element_at(b, ci)] for ci in act)
    outside = frozenset(c.labels[f] for f in act.values())
    return IntervalHZ(
        basis=c.labels_of(b),
        inside_active=inside,
        outside_active=outside,
        members=frozenset(c.labels_of(m) for m in _interval_masks(Z, b, act)),
    )


def interval(Z: Multimatroid, B: Iterable[str], order: Order = None) -> IntervalHZ:
    Z.require_non_degenerate("intervals")
    b = _basis_mask(Z, B)
    return _interval(Z, b, _basis_activity(Z, b, class_positions(Z.carrier, order)))


def interval_family(Z: Multimatroid, order: Order = None) -> list[IntervalHZ]:
    acts = all_basis_activities(Z, order)
    return [_interval(Z, b, a) for b, a in acts.items()]


def _mce_mask(Z: Multimatroid, s: int, pos: list[int]) -> int:
    m = 0
    for circ in Z.circuit_masks:
        if circ & ~s == 0:
            m |= 1 << _min_bit(Z, circ, pos)
    return m


def min_circuit_classes(Z: Multimatroid, S: Iterable[str], order: Order = None):
    """Minima of the circuits inside ``S`` and the classes holding them."""
    c = Z.carrier
    s = c.subtransversal(S)
    m = _mce_mask(Z, s, class_positions(c, order))
    return c.labels_of(m), {c.names[c.class_of[i]] for i in _bits(m)}


def cover_multiplicity_check(Z: Multimatroid, order: Order = None) -> dict:
    """Count how many intervals hold each transversal against the product formula."""
    acts = all_basis_activities(Z, order)
    c = Z.carrier
    pos = class_positions(c, order)
    hits: dict[int, int] = {}
    for b, act in acts.items():
        for m in _interval_masks(Z, b, act):
            hits[m] = hits.get(m, 0) + 1
    mismatches = []
    for tmask in c.transversals():
        expected = 1
        for i in _bits(_mce_mask(Z, tmask, pos)):
            expected *= len(c.classes[c.class_of[i]]) - 1
        got = hits.get(tmask, 0)
        if got != expected:
            mismatches.append({
                "transversal": c.sorted_labels(tmask),
                "count": got,
                "expected": expected,
            })
    return {"passed": not mismatches, "transversals": len(Z.transversal_nullities), "mismatches": mismatches}


def interval_multiplicity(Z: Multimatroid, S: Iterable[str], order: Order = None) -> int:
    c = Z.carrier
    s = c.subtransversal(S)
    return sum(s in _interval_masks(Z, b, a) for b, a in all_basis_activities(Z, order).items())


# equivalence classes of bases

@dataclass(frozen=True)
class BasisClass:
    representative: frozenset[str]
    members: frozenset[frozenset[str]]
    active: frozenset[str]
    underline: dict[str, str]

    def to_json(self) -> dict:
        return {
            "representative": sorted(self.representative),
            "members": sorted(sorted(m) for m in self.members),
            "active": sorted(self.active),
            "underline": dict(sorted(self.underline.items())),
        }


def _lex_key(Z: Multimatroid, mask: int, pos: list[int]):
    c = Z.carrier
    by_pos = sorted(range(len(c)), key=lambda ci: pos[ci])
    return tuple(c.element_at(mask, ci) for ci in by_pos)


def _basis_groups(Z: Multimatroid, order: Order):
    acts = all_basis_activities(Z, order)
    pos = class_positions(Z.carrier, order)
    c = Z.carrier
    groups: dict[tuple, list[int]] = {}
    for b, act in acts.items():
        key = (frozenset(act), tuple(
            c.element_at(b, ci) for ci in range(len(c)) if ci not in act
        ))
        groups.setdefault(key, []).append(b)
    out = []
    for key in sorted(groups, key=lambda k: min(_lex_key(Z, m, pos) for m in groups[k])):
        members = sorted(groups[key], key=lambda m: _lex_key(Z, m, pos))
        out.append((members[0], members, acts))
    return out


def basis_classes(Z: Multimatroid, order: Order = None) -> list[BasisClass]:
    """Bases grouped by active set and their elements on inactive classes."""
    c = Z.carrier
    out = []
    for rep, members, acts in _basis_groups(Z, order):
        rep_report = _report(Z, rep, acts[rep])
        out.append(BasisClass(
            representative=rep_report.basis,
            members=frozenset(c.labels_of(m) for m in members),
            active=rep_report.active,
            underline=rep_report.underline,
        ))
    return out


def class_expansion(Z: Multimatroid, order: Order = None) -> Polynomial:
    """``sum over classes of prod over active w of (t + |w| - 1)``."""
    c = Z.carrier
    total = Polynomial()
    for rep, _, acts in _basis_groups(Z, order):
        term = _ONE
        for ci in acts[rep]:
            term = term * (_T + (len(c.classes[ci]) - 1))
        total = total + term
    return total


def a_coefficients(Z: Multimatroid, order: Order = None) -> list[int]:
    """``a_i`` counts bases ``B`` with ``|B & rep(B)| = |inact(B)| + i``."""
    n = len(Z.carrier)
    a = [0] * (n + 1)
    for rep, members, acts in _basis_groups(Z, order):
        for m in members:
            i = (m & rep).bit_count() - (n - len(acts[m]))
            a[i] += 1
    return a


# cocompatible transversals

def _circuit_minima(Z: Multimatroid, pos: list[int]) -> list[tuple[int, int]]:
    return [(circ, _min_bit(Z, circ, pos)) for circ in Z.circuit_masks]


def _transversal_activity(Z: Multimatroid, tmask: int, minima) -> dict[int, int]:
    cls = Z.carrier.class_of
    act: dict[int, int] = {}
    for circ, mb in minima:
        ci = cls[mb]
        if circ & ~Z.carrier.class_masks[ci] & ~tmask == 0:
            prev = act.setdefault(ci, mb)
            if prev != mb:
                raise MultimatroidError("witnessing circuits disagree on their minimum")
    return act


def _transversal_mask(Z: Multimatroid, Tr) -> int:
    m = Tr if isinstance(Tr, int) else Z.carrier.mask(Tr)
    if not Z.carrier.is_transversal(m):
        raise MultimatroidError(f"{sorted(Z.carrier.labels_of(m))} is not a transversal")
    return m


def transversal_activities(Z: Multimatroid, Tr: Iterable[str], order: Order = None) -> ActivityReport:
    """Classes ``w`` with a circuit ``C``, ``min C`` in ``w``, ``C - w`` inside ``T``."""
    m = _transversal_mask(Z, Tr)
    minima = _circuit_minima(Z, class_positions(Z.carrier, order))
    return _report(Z, m, _transversal_activity(Z, m, minima))


def _is_cocompatible(tmask: int, minima) -> bool:
    return not any(circ & ~tmask == 1 << mb for circ, mb in minima)


def is_cocompatible(Z: Multimatroid, Tr: Iterable[str], order: Order = None) -> bool:
    m = _transversal_mask(Z, Tr)
    return _is_cocompatible(m, _circuit_minima(Z, class_positions(Z.carrier, order)))


def _closure(Z: Multimatroid, tmask: int, minima) -> int:
    cm = Z.carrier.class_masks
    for ci, mb in _transversal_activity(Z, tmask, minima).items():
        tmask = (tmask & ~cm[ci]) | (1 << mb)
    return tmask


def cocompatible_closure(Z: Multimatroid, Tr: Iterable[str], order: Order = None) -> frozenset[str]:
    m = _transversal_mask(Z, Tr)
    minima = _circuit_minima(Z, class_positions(Z.carrier, order))
    return Z.carrier.labels_of(_closure(Z, m, minima))


def cocompatible_transversals(Z: Multimatroid, order: Order = None) -> list[int]:
    minima = _circuit_minima(Z, class_positions(Z.carrier, order))
    return [m for m in Z.carrier.transversals() if _is_cocompatible(m, minima)]


@dataclass(frozen=True)
class CocompatibleCell:
    closure: frozenset[str]
    members: frozenset[frozenset[str]]

    def to_json(self) -> dict:
        return {"closure": sorted(self.closure), "members": sorted(sorted(m) for m in self.members)}


def cocompatible_partition(Z: Multimatroid, order: Order = None) -> list[CocompatibleCell]:
    """Transversals grouped by their cocompatible closure."""
    Z.require_non_degenerate("cocompatible partitions")
    c = Z.carrier
    minima = _circuit_minima(Z, class_positions(c, order))
    cells: dict[int, list[int]] = {}
    for m in c.transversals():
        cells.setdefault(_closure(Z, m, minima), []).append(m)
    return [
        CocompatibleCell(c.labels_of(k), frozenset(c.labels_of(m) for m in v))
        for k, v in sorted(cells.items())
    ]


def cocompatible_expansion(Z: Multimatroid, weights: Weights = None, order: Order = None) -> Polynomial:
    """Sum over cocompatible ``T``; active ``w`` gives ``sum_{e != T_w} x_e + t x_{T_w}``."""
    Z.require_non_degenerate("the cocompatible expansion")
    c = Z.carrier
    minima = _circuit_minima(Z, class_positions(c, order))
    wv = _weight_vector(Z, weights)
    total = Polynomial()
    for m in c.transversals():
        if not _is_cocompatible(m, minima):
            continue
        act = _transversal_activity(Z, m, minima)
        term = _ONE
        for ci in range(len(c)):
            own = c.element_at(m, ci)
            if ci in act:
                f = _T * wv[own]
                for b in c.class_bits(ci):
                    if b != own:
                        f = f + wv[b]
                term = term * f
            else:
                term = term * wv[own]
        total = total + term
    return total


def nullity_identity_failures(Z: Multimatroid, order: Order = None) -> list[dict]:
    """Transversals where ``n(T) != |act(ccl T)| - |T ^ ccl T|``."""
    c = Z.carrier
    minima = _circuit_minima(Z, class_positions(c, order))
    bad = []
    for m, n in Z.transversal_nullities.items():
        cl = _closure(Z, m, minima)
        k = len(_transversal_activity(Z, cl, minima))
        # |T ^ ccl T| counted per skew class where they differ
        moved = (m ^ cl).bit_count() // 2
        if n != k - moved:
            bad.append({"transversal": c.sorted_labels(m), "nullity": n, "closure": c.sorted_labels(cl)})
    return bad
