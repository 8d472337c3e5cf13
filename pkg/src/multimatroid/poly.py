"""Sparse multivariate polynomials with exact rational coefficients.

Variables are :class:`Var` values of three kinds: the distinguished ``t``,
one weight per ground-set element, and free-standing named symbols. A
polynomial is an immutable mapping from monomials to nonzero
:class:`~fractions.Fraction` coefficients.

>>> t = Polynomial.var(T)
>>> str((t + 1) * (t + 1))
't^2 + 2*t + 1'
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

KIND_T = 0
KIND_WEIGHT = 1
KIND_NAMED = 2


@dataclass(frozen=True, order=True)
class Var:
    kind: int
    name: str

    def __str__(self) -> str:
        if self.kind == KIND_WEIGHT:
            return f"x[{self.name}]"
        return self.name


T = Var(KIND_T, "t")


def weight(label: str) -> Var:
    """The weight variable of a ground-set element."""
    return Var(KIND_WEIGHT, label)


def named(name: str) -> Var:
    return Var(KIND_NAMED, name)


def parse_var(text: str) -> Var:
    """Inverse of ``str(Var)``."""
    if text == "t":
        return T
    if text.startswith("x[") and text.endswith("]"):
        return weight(text[2:-1])
    return named(text)


# A monomial is a tuple of (Var, exponent) pairs sorted by Var, exponents > 0.
Monomial = tuple
Scalar = Union[int, Fraction]
_ONE: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


_END = (KIND_NAMED + 1,)


def _mono_key(m: Monomial):
    # lexicographic on (kind, name) with higher exponents first; a variable
    # that is absent ranks below any positive power of it
    return tuple((v.kind, v.name, -e) for v, e in m) + (_END,)


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self._terms: dict[Monomial, Fraction] = clean
        self._hash = None

    # construction
    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        return cls({_ONE: c})

    @classmethod
    def var(cls, v: Var | str, power: int = 1) -> "Polynomial":
        if isinstance(v, str):
            v = parse_var(v)
        if power == 0:
            return cls.const(1)
        return cls({((v, power),): 1})

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # inspection
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[Var]:
        return {v for m in self._terms for v, _ in m}

    def degree(self, v: Var | None = None) -> int:
        if not self._terms:
            return -1
        if v is None:
            return max(sum(e for _, e in m) for m in self._terms)
        return max(dict(m).get(v, 0) for m in self._terms)

    def coefficients(self, v: Var = T) -> list["Polynomial"]:
        """Coefficients of powers of ``v``, constant term first."""
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            d = dict(m)
            k = d.pop(v, 0)
            out.setdefault(k, {})[tuple(sorted(d.items()))] = c
        n = max(out, default=-1)
        return [Polynomial._raw(out.get(k, {})) for k in range(n + 1)]

    def constant(self) -> Fraction:
        return self._terms.get(_ONE, Fraction(0))

    # ring operations
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial()
        return Polynomial._raw({m: k * c for m, k in self._terms.items()})

    def __truediv__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return self.scale(1 / Fraction(c))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # substitution
    def specialize(self, assignment: Mapping[Var, "Polynomial | Scalar"]) -> "Polynomial":
        """Substitute polynomials or scalars for some variables."""
        cache: dict[tuple[Var, int], Polynomial] = {}
        out = Polynomial()
        for m, c in self._terms.items():
            term = Polynomial.const(c)
            rest = []
            for v, e in m:
                if v in assignment:
                    key = (v, e)
                    if key not in cache:
                        val = assignment[v]
                        if not isinstance(val, Polynomial):
                            val = Polynomial.const(val)
                        cache[key] = val ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term * Polynomial._raw({tuple(rest): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, assignment: Mapping[Var, Scalar]) -> Fraction:
        missing = self.variables() - set(assignment)
        if missing:
            names = ", ".join(sorted(str(v) for v in missing))
            raise ValueError(f"no value for variable(s): {names}")
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for v, e in m:
                term *= Fraction(assignment[v]) ** e
            total += term
        return total

    # rendering
    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda mc: _mono_key(mc[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [str(v) if e == 1 else f"{v}^{e}" for v, e in m]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def to_json(self) -> list[dict]:
        return [
            {
                "vars": {str(v): e for v, e in m},
                "coeff_num": c.numerator,
                "coeff_den": c.denominator,
            }
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "Polynomial":
        terms = {}
        for item in data:
            m = tuple(sorted((parse_var(k), int(e)) for k, e in item["vars"].items() if e))
            terms[m] = terms.get(m, 0) + Fraction(item["coeff_num"], item.get("coeff_den", 1))
        return cls(terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False)


def t_poly() -> Polynomial:
    return Polynomial.var(T)


def product(factors: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial.const(1)
    for f in factors:
        out = out * f
    return out
