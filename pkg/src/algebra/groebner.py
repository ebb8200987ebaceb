"""
Buchberger's algorithm and the questions it decides: normal forms, ideal and
radical membership, elimination, kernels of ring maps, ideal equality.
"""

import heapq
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from loguru import logger

from algebra import monomials as mono
from algebra.errors import AmbientMismatchError, BudgetExceededError, UnassignedVariableError
from algebra.fields import Coefficient
from algebra.monomials import Monomial
from algebra.polynomial import Polynomial
from algebra.rings import MonomialOrder, PolynomialRing, VariableTable


@dataclass(frozen=True)
class Budget:
    """Resource caps for a single Buchberger run."""

    max_basis_size: int = 5000
    max_reduction_steps: int = 20_000_000


_budget = Budget()


def configure_budget(budget: Budget):
    global _budget
    _budget = budget
    logger.debug(f"Groebner budget set to {budget}")


def current_budget() -> Budget:
    return _budget


@dataclass(frozen=True)
class IdealPresentation:
    ring: PolynomialRing
    generators: Tuple[Polynomial, ...]

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if isinstance(g, str):
                g = self.ring.parse(g)
            else:
                g = g.with_order(self.ring) if g.ring.same_ambient(self.ring) else g.embed(self.ring)
            if g:
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def of(cls, ring: PolynomialRing, generators: Iterable[Union[Polynomial, str]]) -> "IdealPresentation":
        return cls(ring, tuple(generators))

    def __add__(self, other: "IdealPresentation") -> "IdealPresentation":
        self.ring.require_same_ambient(other.ring)
        return IdealPresentation(self.ring, self.generators + other.generators)

    def extended(self, generators: Iterable[Polynomial]) -> "IdealPresentation":
        return IdealPresentation(self.ring, self.generators + tuple(generators))

    def describe(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


class _Element:
    __slots__ = ("lm", "terms")

    def __init__(self, lm: Monomial, terms: Dict[Monomial, Coefficient]):
        self.lm = lm
        self.terms = terms


class _Engine:
    """One Buchberger run: fixed ring, order and budget."""

    def __init__(self, ring: PolynomialRing, budget: Budget):
        self.ring = ring
        self.field = ring.field
        self.key = ring.order.key
        self.weights = ring.weights
        self.budget = budget
        self.steps = 0

    def _tick(self):
        self.steps += 1
        if self.steps > self.budget.max_reduction_steps:
            raise BudgetExceededError("max_reduction_steps", self.budget.max_reduction_steps)

    def monic(self, terms: Dict[Monomial, Coefficient]) -> _Element:
        lm = max(terms, key=self.key)
        inv = self.field.inv(terms[lm])
        mul = self.field.mul
        return _Element(lm, {m: mul(c, inv) for m, c in terms.items()})

    def reduce(self, f: Dict[Monomial, Coefficient], basis: Sequence[_Element]) -> Dict[Monomial, Coefficient]:
        """Full reduction of f modulo monic ``basis``."""
        key = self.key
        sub, mul = self.field.sub, self.field.mul
        zero = self.field.zero
        work = dict(f)
        remainder: Dict[Monomial, Coefficient] = {}
        while work:
            m = max(work, key=key)
            c = work[m]
            divisor = None
            for g in basis:
                if mono.divides(g.lm, m):
                    divisor = g
                    break
            if divisor is None:
                remainder[m] = work.pop(m)
                continue
            q = mono.quotient(m, divisor.lm)
            for gm, gc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(gm, q))
                v = sub(work.get(t, zero), mul(c, gc))
                if v:
                    work[t] = v
                else:
                    work.pop(t, None)
            self._tick()
        return remainder

    def spoly(self, f: _Element, g: _Element, lcm: Monomial) -> Dict[Monomial, Coefficient]:
        sub = self.field.sub
        zero = self.field.zero
        qf = mono.quotient(lcm, f.lm)
        qg = mono.quotient(lcm, g.lm)
        out = {mono.mul(m, qf): c for m, c in f.terms.items()}
        for m, c in g.terms.items():
            t = mono.mul(m, qg)
            v = sub(out.get(t, zero), c)
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return out

    def run(self, generators: Sequence[Dict[Monomial, Coefficient]]) -> List[_Element]:
        basis: List[_Element] = []
        heap: List[Tuple[int, int, int]] = []
        pending = set()

        def add(elem: _Element):
            basis.append(elem)
            n = len(basis) - 1
            if len(basis) > self.budget.max_basis_size:
                raise BudgetExceededError("max_basis_size", self.budget.max_basis_size)
            for i in range(n):
                deg = mono.weighted_degree(mono.lcm(basis[i].lm, elem.lm), self.weights)
                heapq.heappush(heap, (deg, i, n))
                pending.add((i, n))

        for g in generators:
            r = self.reduce(g, basis)
            if r:
                add(self.monic(r))

        skipped = 0
        while heap:
            _, i, j = heapq.heappop(heap)
            pending.discard((i, j))
            li, lj = basis[i].lm, basis[j].lm
            if mono.coprime(li, lj):
                skipped += 1
                continue
            lcm = mono.lcm(li, lj)
            if self._chain(i, j, lcm, basis, pending):
                skipped += 1
                continue
            r = self.reduce(self.spoly(basis[i], basis[j], lcm), basis)
            if r:
                add(self.monic(r))
        logger.debug(f"Buchberger: {len(basis)} elements, {skipped} pairs skipped, {self.steps} steps")
        return self.interreduce(basis)

    @staticmethod
    def _chain(i: int, j: int, lcm: Monomial, basis: Sequence[_Element], pending) -> bool:
        for k, g in enumerate(basis):
            if k == i or k == j or not mono.divides(g.lm, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    def interreduce(self, basis: Sequence[_Element]) -> List[_Element]:
        key = self.key
        minimal: List[_Element] = []
        for elem in sorted(basis, key=lambda e: key(e.lm)):
            if not any(mono.divides(o.lm, elem.lm) for o in minimal):
                minimal.append(elem)
        reduced = []
        for k, elem in enumerate(minimal):
            others = minimal[:k] + minimal[k + 1:]
            reduced.append(self.monic(self.reduce(elem.terms, others)))
        reduced.sort(key=lambda e: key(e.lm), reverse=True)
        return reduced


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolynomialRing
    elements: Tuple[Polynomial, ...]
    source: IdealPresentation

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial() for g in self.elements]

    def is_unit_ideal(self) -> bool:
        return len(self.elements) == 1 and not any(self.elements[0].leading_monomial())

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return not normal_form(p, self)

    def describe(self) -> List[str]:
        return [str(g) for g in self.elements]


CACHE_SIZE = 512

_cache: "OrderedDict[Tuple[PolynomialRing, Tuple[Polynomial, ...]], GroebnerBasis]" = OrderedDict()
_cache_lock = threading.Lock()


def clear_cache():
    with _cache_lock:
        _cache.clear()


def cache_size() -> int:
    with _cache_lock:
        return len(_cache)


def buchberger(ideal: IdealPresentation, order: Optional[MonomialOrder] = None,
               budget: Optional[Budget] = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order`` (default: the ring's order)."""
    ring = ideal.ring if order is None else ideal.ring.with_order(order)
    gens = tuple(g.with_order(ring) for g in ideal.generators)
    key = (ring, gens)
    with _cache_lock:
        cached = _cache.get(key)
        if cached is not None:
            _cache.move_to_end(key)
    if cached is not None:
        return cached
    engine = _Engine(ring, budget or _budget)
    elements = engine.run([dict(g.terms) for g in gens])
    gb = GroebnerBasis(ring, tuple(Polynomial(ring, e.terms) for e in elements), ideal)
    logger.debug(f"Groebner basis over {ring.describe()}: {len(gb.elements)} elements")
    with _cache_lock:
        gb = _cache.setdefault(key, gb)
        while len(_cache) > CACHE_SIZE:
            _cache.popitem(last=False)
    return gb


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    gb.ring.require_same_ambient(p.ring)
    engine = _Engine(gb.ring, _budget)
    basis = [_Element(g.leading_monomial(), g.terms) for g in gb.elements]
    return Polynomial(gb.ring, engine.reduce(p.terms, basis))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    f.ring.require_same_ambient(g.ring)
    engine = _Engine(f.ring, _budget)
    ef, eg = engine.monic(dict(f.terms)), engine.monic(dict(g.with_order(f.ring).terms))
    return Polynomial(f.ring, engine.spoly(ef, eg, mono.lcm(ef.lm, eg.lm)))


def satisfies_buchberger_criterion(gb: GroebnerBasis) -> bool:
    """Every S-polynomial of basis pairs reduces to zero."""
    elems = gb.elements
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if normal_form(s_polynomial(elems[i], elems[j]), gb):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    lms = gb.leading_monomials()
    for k, g in enumerate(gb.elements):
        if g.leading_coefficient() != 1:
            return False
        for m in g.terms:
            if any(mono.divides(lm, m) for i, lm in enumerate(lms) if i != k):
                return False
    return True


def ideal_membership(p: Polynomial, ideal: IdealPresentation) -> bool:
    if not p:
        return True
    return not normal_form(p, buchberger(ideal))


def radical_membership(p: Polynomial, ideal: IdealPresentation) -> bool:
    """True iff some power of p lies in the ideal (auxiliary-variable test)."""
    ring = ideal.ring
    w = ring.table.fresh_name("_w")
    extended = PolynomialRing(ring.table.extend([(w, 1)]), ring.field)
    gens = [g.embed(extended) for g in ideal.generators]
    gens.append(extended.one() - extended.gen(w) * p.embed(extended))
    return buchberger(IdealPresentation(extended, tuple(gens))).is_unit_ideal()


def eliminate(ideal: IdealPresentation, drop: Iterable[str]) -> IdealPresentation:
    """Generators of the ideal intersected with the subring free of ``drop``."""
    drop = [name for name in ideal.ring.names if name in set(drop)]
    if not drop:
        gb = buchberger(ideal)
        return IdealPresentation(ideal.ring, gb.elements)
    ring = ideal.ring.elimination_order(drop)
    gb = buchberger(ideal, ring.order)
    dropped = {ideal.ring.table.index(n) for n in drop}
    subring = PolynomialRing(ideal.ring.table.without(drop), ideal.ring.field)
    kept = [g.embed(subring) for g in gb.elements
            if not any(m[i] for m in g.terms for i in dropped)]
    logger.debug(f"Eliminated {drop}: {len(kept)} of {len(gb.elements)} basis elements survive")
    return IdealPresentation(subring, tuple(kept))


def kernel_of_ring_map(source: PolynomialRing, target: PolynomialRing,
                       images: Mapping[str, Union[Polynomial, str]],
                       target_relations: Sequence[Polynomial] = ()) -> IdealPresentation:
    """Kernel of source -> target/(target_relations), x_i -> images[x_i], via the graph ideal."""
    if source.field != target.field:
        raise AmbientMismatchError(f"field mismatch: {source.field} vs {target.field}")
    clash = set(source.names) & set(target.names)
    if clash:
        raise AmbientMismatchError(f"source and target share variable names {sorted(clash)}")
    combined = PolynomialRing(VariableTable(target.table.entries + source.table.entries), source.field)
    gens = []
    for name in source.names:
        if name not in images:
            raise UnassignedVariableError(f"no image given for '{name}'")
        image = images[name]
        if isinstance(image, str):
            image = target.parse(image)
        gens.append(combined.gen(name) - image.embed(combined))
    gens.extend(r.embed(combined) for r in target_relations)
    kernel = eliminate(IdealPresentation(combined, tuple(gens)), target.names)
    return IdealPresentation(source.default_order(), kernel.generators)


def ideal_equal(a: IdealPresentation, b: IdealPresentation) -> bool:
    a.ring.require_same_ambient(b.ring)
    gb_a, gb_b = buchberger(a), buchberger(b)
    return (all(not normal_form(g, gb_b) for g in a.generators)
            and all(not normal_form(g, gb_a) for g in b.generators))
