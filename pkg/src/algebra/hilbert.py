"""
Monomial ideals and Hilbert series.

The numerator of the Hilbert series of k[x]/I over the denominator
prod (1 - t^w_i) is computed on the initial ideal by pivot recursion:

    N(I) = N(I + (p)) + t^deg(p) * N(I : p)

with p a pure power of a variable shared by two minimal generators. When the
generators are pairwise coprime they form a regular sequence and
N(I) = prod (1 - t^deg(g)).
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from sympy import Poly, Symbol, ZZ

from algebra import monomials as mono
from algebra.errors import PreconditionError
from algebra.monomials import Monomial

T = Symbol("t")


def int_poly(coefficients: Sequence[int]) -> Poly:
    """Integer polynomial in t from ascending coefficients."""
    coeffs = list(coefficients) or [0]
    return Poly.from_list(list(reversed(coeffs)), T, domain=ZZ)


def ascending(p: Poly) -> List[int]:
    if p.is_zero:
        return [0]
    return [int(c) for c in reversed(p.all_coeffs())]


def format_univariate(coefficients: Sequence[int], var: str = "t") -> str:
    parts = []
    for k, c in enumerate(coefficients):
        if not c:
            continue
        body = "1" if k == 0 else (var if k == 1 else f"{var}^{k}")
        magnitude = abs(c)
        if k and magnitude != 1:
            body = f"{magnitude}*{body}"
        elif not k:
            body = str(magnitude)
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts) if parts else "0"


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal stored by its minimal generators."""

    generators: Tuple[Monomial, ...]
    nvars: int

    def __post_init__(self):
        object.__setattr__(self, "generators", _minimalize(self.generators))

    @classmethod
    def of(cls, generators: Sequence[Monomial], nvars: int) -> "MonomialIdeal":
        return cls(tuple(tuple(g) for g in generators), nvars)

    def __len__(self) -> int:
        return len(self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(mono.divides(g, m) for g in self.generators)

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    def pure_powers(self) -> Dict[int, int]:
        """Variable index -> smallest exponent e with x_i^e in the ideal."""
        found: Dict[int, int] = {}
        for g in self.generators:
            sup = mono.support(g)
            if len(sup) == 1:
                i = sup[0]
                found[i] = min(found.get(i, g[i]), g[i])
        return found

    def is_artinian(self) -> bool:
        return len(self.pure_powers()) == self.nvars or self.is_unit()

    def colon(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in self.generators), self.nvars)

    def plus(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(self.generators + (tuple(m),), self.nvars)

    def standard_monomials(self, weights: Sequence[int], d: int) -> List[Monomial]:
        """Monomials of weighted degree d outside the ideal."""
        return [m for m in mono.of_degree(weights, d) if not self.contains(m)]

    def iter_standard_monomials(self) -> Iterator[Monomial]:
        """All standard monomials of an Artinian ideal, pruned depth first."""
        if not self.is_artinian():
            raise PreconditionError("infinitely many standard monomials")
        if self.is_unit():
            return
        bounds = self.pure_powers()
        n = self.nvars

        def rec(i: int, prefix: List[int]):
            if i == n:
                yield tuple(prefix)
                return
            for e in range(bounds[i]):
                candidate = prefix + [e] + [0] * (n - i - 1)
                if self.contains(tuple(candidate)):
                    break
                yield from rec(i + 1, prefix + [e])

        yield from rec(0, [])

    def count_standard_monomials(self) -> int:
        return sum(1 for _ in self.iter_standard_monomials())

    def dimension(self) -> int:
        """Largest size of a variable set containing no generator's support; -1 for the unit ideal."""
        if self.is_unit():
            return -1
        masks = [sum(1 << i for i in mono.support(g)) for g in self.generators]
        for size in range(self.nvars, -1, -1):
            for subset in combinations(range(self.nvars), size):
                chosen = sum(1 << i for i in subset)
                if all(mask & ~chosen for mask in masks):
                    return size
        return 0

    def numerator(self, weights: Sequence[int]) -> Poly:
        return int_poly(_numerator(self.generators, tuple(weights)))


def _minimalize(generators: Sequence[Monomial]) -> Tuple[Monomial, ...]:
    ordered = sorted(set(tuple(g) for g in generators), key=lambda g: (sum(g), g))
    kept: List[Monomial] = []
    for g in ordered:
        if not any(mono.divides(k, g) for k in kept):
            kept.append(g)
    return tuple(sorted(kept, reverse=True))


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _poly_add(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def _numerator(generators: Tuple[Monomial, ...], weights: Tuple[int, ...]) -> Tuple[int, ...]:
    gens = _minimalize(generators)
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return (0,)
    shared = None
    for i in range(len(weights)):
        holders = [g[i] for g in gens if g[i]]
        if len(holders) >= 2:
            shared = (i, min(holders))
            break
    if shared is None:
        result: Tuple[int, ...] = (1,)
        for g in gens:
            deg = mono.weighted_degree(g, weights)
            result = _poly_mul(result, (1,) + (0,) * (deg - 1) + (-1,))
        return result
    i, e = shared
    pivot = mono.variable(len(weights), i, e)
    added = _numerator(gens + (pivot,), weights)
    colon = _numerator(tuple(tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens), weights)
    shift = (0,) * mono.weighted_degree(pivot, weights) + colon
    return _poly_add(added, shift)


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / prod (1 - t^w) with integer numerator coefficients (ascending)."""

    numerator: Tuple[int, ...]
    denominator: Tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.numerator) or [0]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "numerator", tuple(int(c) for c in coeffs))
        object.__setattr__(self, "denominator", tuple(sorted(int(w) for w in self.denominator)))

    @classmethod
    def from_poly(cls, numerator: Poly, denominator: Sequence[int]) -> "HilbertSeries":
        return cls(tuple(ascending(numerator)), tuple(denominator))

    @classmethod
    def koszul(cls, relation_degrees: Sequence[int], weights: Sequence[int]) -> "HilbertSeries":
        """prod (1 - t^deg r) / prod (1 - t^w) for a regular sequence."""
        num: Tuple[int, ...] = (1,)
        for d in relation_degrees:
            num = _poly_mul(num, (1,) + (0,) * (d - 1) + (-1,))
        return cls(num, tuple(weights))

    def numerator_poly(self) -> Poly:
        return int_poly(self.numerator)

    def denominator_poly(self) -> Poly:
        result = int_poly([1])
        for w in self.denominator:
            result = result * int_poly([1] + [0] * (w - 1) + [-1])
        return result

    def coefficients(self, up_to: int) -> List[int]:
        """Power-series coefficients of t^0 .. t^up_to."""
        series = [self.numerator[k] if k < len(self.numerator) else 0 for k in range(up_to + 1)]
        for w in self.denominator:
            # multiply by 1 / (1 - t^w)
            for k in range(w, up_to + 1):
                series[k] += series[k - w]
        return series

    def equals(self, other: "HilbertSeries") -> bool:
        """Rational-function equality after clearing denominators."""
        lhs = self.numerator_poly() * other.denominator_poly()
        rhs = other.numerator_poly() * self.denominator_poly()
        return lhs == rhs

    def numerator_at_one(self) -> int:
        return sum(self.numerator)

    def pole_order(self) -> int:
        """Order of the pole at t = 1, which is the Krull dimension of the ring."""
        p = self.numerator_poly()
        count = 0
        one = int_poly([-1, 1])
        while not p.is_zero and p.eval(1) == 0:
            p = p.exquo(one)
            count += 1
        return len(self.denominator) - count

    def format_denominator(self) -> str:
        counts: Dict[int, int] = {}
        for w in self.denominator:
            counts[w] = counts.get(w, 0) + 1
        factors = []
        for w in sorted(counts):
            base = "(1-t)" if w == 1 else f"(1-t^{w})"
            factors.append(base if counts[w] == 1 else f"{base}^{counts[w]}")
        return "*".join(factors)

    def __str__(self) -> str:
        num = format_univariate(self.numerator)
        if not self.denominator:
            return num
        return f"({num}) / ({self.format_denominator()})"

    def to_dict(self) -> dict:
        return {
            "numerator": list(self.numerator),
            "denominator_weights": list(self.denominator),
            "text": str(self),
        }


def hilbert_series_of(ideal: MonomialIdeal, weights: Sequence[int]) -> HilbertSeries:
    return HilbertSeries(_numerator(ideal.generators, tuple(weights)), tuple(weights))


def monomial_count(weights: Sequence[int], d: int) -> int:
    return sum(1 for _ in mono.of_degree(weights, d))


INFINITE = math.inf
