"""
Sparse multivariate polynomials with exact coefficients.

A polynomial is a map monomial -> nonzero coefficient attached to a
``PolynomialRing``. Values are immutable once built; every operation returns a
new polynomial.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from algebra import monomials as mono
from algebra.errors import AmbientMismatchError, PreconditionError, UnassignedVariableError
from algebra.fields import Coefficient
from algebra.monomials import Monomial
from algebra.rings import PolynomialRing

Scalar = (int, Fraction)


class Polynomial:
    __slots__ = ("ring", "terms", "_sorted", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Dict[Monomial, Coefficient]):
        # Trusted constructor: terms must already be normalised and nonzero.
        self.ring = ring
        self.terms = terms
        self._sorted = None
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolynomialRing, terms: Mapping[Monomial, Coefficient]) -> "Polynomial":
        field = ring.field
        clean: Dict[Monomial, Coefficient] = {}
        n = ring.ngens
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != n or any(e < 0 for e in m):
                raise PreconditionError(f"monomial {m} does not fit {n} variables")
            value = field.convert(c)
            if value:
                clean[m] = field.add(clean[m], value) if m in clean else value
                if not clean[m]:
                    del clean[m]
        return cls(ring, clean)

    # basic protocol

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.same_ambient(other.ring) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.table, self.ring.field, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.names
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            negative = field.is_negative(c)
            magnitude = -c if negative else c
            if any(m):
                body = mono.format_monomial(m, names)
                if magnitude != 1:
                    body = f"{field.format(magnitude)}*{body}"
            else:
                body = field.format(magnitude)
            if k == 0:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    # ordering

    def sorted_terms(self) -> List[Tuple[Monomial, Coefficient]]:
        """Terms in descending order under the ring's active order."""
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise PreconditionError("zero polynomial has no leading monomial")
        return self.sorted_terms()[0][0]

    def leading_coefficient(self) -> Coefficient:
        if not self.terms:
            raise PreconditionError("zero polynomial has no leading coefficient")
        return self.sorted_terms()[0][1]

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.sorted_terms()]

    def coefficient(self, m: Monomial) -> Coefficient:
        return self.terms.get(tuple(m), self.ring.field.zero)

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring:
                self.ring.require_same_ambient(other.ring)
            return other
        if isinstance(other, Scalar):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        field = self.ring.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            if m in terms:
                s = field.add(terms[m], c)
                if s:
                    terms[m] = s
                else:
                    del terms[m]
            else:
                terms[m] = c
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        field = self.ring.field
        return Polynomial(self.ring, {m: field.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Scalar):
            return self.scale(other)
        other = self._coerce(other)
        field = self.ring.field
        terms: Dict[Monomial, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = field.mul(c1, c2)
                if m in terms:
                    s = field.add(terms[m], c)
                    if s:
                        terms[m] = s
                    else:
                        del terms[m]
                else:
                    terms[m] = c
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise PreconditionError(f"exponent must be a natural number, got {n}")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Coefficient) -> "Polynomial":
        field = self.ring.field
        c = field.convert(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: field.mul(v, c) for m, v in self.terms.items()})

    def mul_monomial(self, m: Monomial, c: Optional[Coefficient] = None) -> "Polynomial":
        field = self.ring.field
        if c is None:
            return Polynomial(self.ring, {mono.mul(k, m): v for k, v in self.terms.items()})
        return Polynomial(self.ring, {mono.mul(k, m): field.mul(v, c) for k, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    # gradings

    def degree(self) -> int:
        """Weighted degree (maximum over terms); -1 for the zero polynomial."""
        w = self.ring.weights
        return max((mono.weighted_degree(m, w) for m in self.terms), default=-1)

    def degrees(self) -> List[int]:
        w = self.ring.weights
        return sorted({mono.weighted_degree(m, w) for m in self.terms}, reverse=True)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_components(self) -> Dict[int, "Polynomial"]:
        w = self.ring.weights
        parts: Dict[int, Dict[Monomial, Coefficient]] = {}
        for m, c in self.terms.items():
            parts.setdefault(mono.weighted_degree(m, w), {})[m] = c
        return {d: Polynomial(self.ring, parts[d]) for d in sorted(parts, reverse=True)}

    def lowest_total_degree(self) -> int:
        """Order with respect to the ideal generated by all variables."""
        return min((sum(m) for m in self.terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(mono.support(m))
        return tuple(self.ring.names[i] for i in sorted(used))

    # ring changes

    def with_order(self, ring: PolynomialRing) -> "Polynomial":
        """Same polynomial viewed in a ring that differs only in its order."""
        self.ring.require_same_ambient(ring)
        return self if ring is self.ring else Polynomial(ring, self.terms)

    def embed(self, ring: PolynomialRing) -> "Polynomial":
        """Rename-free embedding into a ring holding every variable used here."""
        if self.ring.same_ambient(ring):
            return self.with_order(ring)
        if ring.field != self.ring.field:
            raise AmbientMismatchError(f"cannot move {self.ring.field} polynomial into {ring.field}")
        positions = []
        for i, name in enumerate(self.ring.names):
            positions.append(ring.table.index(name) if name in ring.table else None)
        terms = {}
        for m, c in self.terms.items():
            target = [0] * ring.ngens
            for i, e in enumerate(m):
                if e:
                    if positions[i] is None:
                        raise AmbientMismatchError(
                            f"variable '{self.ring.names[i]}' does not exist in [{ring.table.describe()}]")
                    target[positions[i]] = e
            terms[tuple(target)] = c
        return Polynomial(ring, terms)

    def substitute(self, assignment: Mapping[str, "Polynomial"],
                   target: Optional[PolynomialRing] = None) -> "Polynomial":
        return substitute(self, assignment, target)


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    p.ring.require_same_ambient(q.ring)
    return p * q


def homogeneous_components(p: Polynomial) -> Dict[int, Polynomial]:
    return p.homogeneous_components()


def substitute(p: Polynomial, assignment: Mapping[str, Polynomial],
               target: Optional[PolynomialRing] = None) -> Polynomial:
    """Image of p under the ring map x_i -> assignment[x_i].

    Unassigned variables map to themselves when source and target share the
    ambient, or to the equally named target variable otherwise.
    """
    source = p.ring
    if target is None:
        values = [v for v in assignment.values() if isinstance(v, Polynomial)]
        target = values[0].ring if values else source
    images: List[Polynomial] = []
    for name in source.names:
        if name in assignment:
            value = assignment[name]
            if isinstance(value, Scalar):
                value = target.constant(value)
            elif not value.ring.same_ambient(target):
                raise AmbientMismatchError(f"image of '{name}' does not live in the target ring")
            images.append(value.with_order(target))
        elif name in target.table:
            images.append(target.gen(name))
        else:
            raise UnassignedVariableError(
                f"variable '{name}' has no image and no namesake in [{target.table.describe()}]")
    if source.field != target.field:
        raise AmbientMismatchError(f"field mismatch: {source.field} vs {target.field}")

    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        if (i, e) not in powers:
            powers[(i, e)] = images[i] ** e
        return powers[(i, e)]

    result = target.zero()
    for m, c in p.terms.items():
        term = target.constant(c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


def from_monomials(ring: PolynomialRing, ms: Iterable[Monomial]) -> List[Polynomial]:
    return [ring.monomial(m) for m in ms]
