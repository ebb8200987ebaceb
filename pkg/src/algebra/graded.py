"""
Graded numerics on quotients k[x]/I by weighted-homogeneous relations:
component bases, Hilbert series, dimension, complete intersections, lengths,
multiplicities and multiplication maps between graded pieces.
"""

from dataclasses import dataclass
from math import prod
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from loguru import logger
from pydantic import BaseModel

from algebra import monomials as mono
from algebra.errors import NotHomogeneousError, PreconditionError
from algebra.groebner import GroebnerBasis, IdealPresentation, buchberger, normal_form
from algebra.hilbert import INFINITE, HilbertSeries, MonomialIdeal, hilbert_series_of
from algebra.linalg import Echelon, Vector
from algebra.monomials import Monomial
from algebra.polynomial import Polynomial
from algebra.rings import PolynomialRing

MULTIPLICITY_CAVEATS = [
    "the parameters are assumed to generate a reduction of the maximal ideal",
    "the ring is assumed Cohen-Macaulay, so the length equals the multiplicity",
]


@dataclass(frozen=True)
class RingPresentation:
    """k[x_1..x_n] / (relations) with weighted-homogeneous relations."""

    ring: PolynomialRing
    relations: Tuple[Polynomial, ...] = ()
    name: str = ""

    def __post_init__(self):
        rels = []
        for r in self.relations:
            if isinstance(r, str):
                r = self.ring.parse(r)
            else:
                r = r.embed(self.ring)
            if not r:
                continue
            if not r.is_homogeneous():
                raise NotHomogeneousError(str(r), r.degrees())
            rels.append(r)
        object.__setattr__(self, "relations", tuple(rels))

    @classmethod
    def of(cls, variables, relations: Iterable[Union[str, Polynomial]] = (), name: str = "",
           field_spec=None) -> "RingPresentation":
        ring = PolynomialRing.of(variables) if field_spec is None else PolynomialRing.of(variables, field_spec)
        return cls(ring, tuple(relations), name)

    @property
    def ideal(self) -> IdealPresentation:
        return IdealPresentation(self.ring, self.relations)

    @property
    def nvars(self) -> int:
        return self.ring.ngens

    def groebner_basis(self) -> GroebnerBasis:
        return buchberger(self.ideal)

    def initial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal.of(self.groebner_basis().leading_monomials(), self.nvars)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p.embed(self.ring), self.groebner_basis())

    def parse(self, text: str) -> Polynomial:
        return self.ring.parse(text)

    def with_relations(self, extra: Iterable[Polynomial]) -> "RingPresentation":
        return RingPresentation(self.ring, self.relations + tuple(extra), self.name)

    def relation_degrees(self) -> List[int]:
        return [r.degree() for r in self.relations]

    def describe(self) -> str:
        rels = ", ".join(str(r) for r in self.relations)
        return f"{self.ring.field}[{self.ring.table.describe()}]/({rels})"


def component_basis(ring: RingPresentation, d: int) -> List[Monomial]:
    """Standard monomials of weighted degree d, largest first."""
    if d < 0:
        return []
    key = ring.ring.order.key
    basis = ring.initial_ideal().standard_monomials(ring.ring.weights, d)
    return sorted(basis, key=key, reverse=True)


def hilbert_series(ring: RingPresentation) -> HilbertSeries:
    series = hilbert_series_of(ring.initial_ideal(), ring.ring.weights)
    logger.info(f"Computed Hilbert series {series}")
    return series


def krull_dim(ring: RingPresentation) -> int:
    return ring.initial_ideal().dimension()


class CompleteIntersectionWitness(BaseModel):
    complete_intersection: bool
    variables: int
    dimension: int
    relations: int
    relation_degrees: List[int]
    hilbert_series: str
    koszul_series: Optional[str] = None
    koszul_identity: Optional[bool] = None


def is_complete_intersection(ring: RingPresentation) -> CompleteIntersectionWitness:
    """Codimension equals the number of relations, witnessed by the Koszul Hilbert series."""
    dim = krull_dim(ring)
    series = hilbert_series(ring)
    count_ok = ring.nvars - dim == len(ring.relations)
    witness = CompleteIntersectionWitness(
        complete_intersection=count_ok,
        variables=ring.nvars,
        dimension=dim,
        relations=len(ring.relations),
        relation_degrees=ring.relation_degrees(),
        hilbert_series=str(series),
    )
    if count_ok:
        koszul = HilbertSeries.koszul(ring.relation_degrees(), ring.ring.weights)
        identity = series.equals(koszul)
        witness.koszul_series = str(koszul)
        witness.koszul_identity = identity
        if not identity:
            logger.error(f"Koszul identity fails for {ring.describe()}")
            witness.complete_intersection = False
    return witness


def _as_polynomials(ring: RingPresentation, extra) -> List[Polynomial]:
    if isinstance(extra, IdealPresentation):
        return [g.embed(ring.ring) for g in extra.generators]
    return [ring.parse(g) if isinstance(g, str) else g.embed(ring.ring) for g in extra]


def quotient_length(ring: RingPresentation, extra) -> Union[int, float]:
    """dim_k of k[x]/(relations + extra), or INFINITE."""
    gens = _as_polynomials(ring, extra)
    for g in gens:
        if g and not g.is_homogeneous():
            raise NotHomogeneousError(str(g), g.degrees(), kind="generator")
    combined = IdealPresentation(ring.ring, ring.relations + tuple(gens))
    initial = MonomialIdeal.of(buchberger(combined).leading_monomials(), ring.nvars)
    if not initial.is_artinian():
        return INFINITE
    length = initial.count_standard_monomials()
    logger.info(f"Quotient length {length} for {len(gens)} extra generators")
    return length


def multiplicity_via_reduction(ring: RingPresentation, params: Sequence[Polynomial]) -> int:
    """Length of S/(params) for a homogeneous system of parameters."""
    params = _as_polynomials(ring, params)
    for p in params:
        if not p.is_homogeneous():
            raise PreconditionError(f"parameter '{p}' is not homogeneous")
    dim = krull_dim(ring)
    if len(params) != dim:
        raise PreconditionError(f"expected {dim} parameters (the Krull dimension), got {len(params)}")
    length = quotient_length(ring, params)
    if length == INFINITE:
        raise PreconditionError("quotient by the parameters has infinite length: not a system of parameters")
    return int(length)


class GradedComponent:
    """Coordinates in the standard-monomial basis of one degree."""

    def __init__(self, ring: RingPresentation, d: int):
        self.ring = ring
        self.degree = d
        self.basis = component_basis(ring, d)
        self.index = {m: i for i, m in enumerate(self.basis)}

    def __len__(self) -> int:
        return len(self.basis)

    def vector(self, p: Polynomial) -> Vector:
        nf = self.ring.normal_form(p)
        return {self.index[m]: c for m, c in nf.terms.items()}

    def polynomial(self, v: Vector) -> Polynomial:
        return self.ring.ring.from_terms({self.basis[i]: c for i, c in v.items()})

    def echelon(self) -> Echelon:
        return Echelon(self.ring.ring.field)

    def format(self, columns: Iterable[int]) -> List[str]:
        names = self.ring.ring.names
        return [mono.format_monomial(self.basis[c], names) for c in columns]


class MultiplicationImage(BaseModel):
    a: int
    j: int
    rank: int
    target_dim: int
    surjective: bool
    missing: List[str]


def multiplication_image(ring: RingPresentation, a: int, j: int) -> MultiplicationImage:
    """Image of S_a (x) S_j -> S_{a+j}; ``missing`` spans a complement."""
    if a < 1 or j < 1:
        raise PreconditionError(f"degrees must be positive, got a={a}, j={j}")
    left, right = component_basis(ring, a), component_basis(ring, j)
    target = GradedComponent(ring, a + j)
    echelon = target.echelon()
    products = sorted({mono.mul(m1, m2) for m1 in left for m2 in right}, key=ring.ring.order.key, reverse=True)
    for m in products:
        if echelon.rank == len(target):
            break
        echelon.add(target.vector(ring.ring.monomial(m)))
    missing = target.format(echelon.free_columns(len(target)))
    return MultiplicationImage(a=a, j=j, rank=echelon.rank, target_dim=len(target),
                               surjective=echelon.rank == len(target), missing=missing)


def multiplication_surjective(ring: RingPresentation, a: int, j: int) -> bool:
    image = multiplication_image(ring, a, j)
    logger.debug(f"S_{a} x S_{j} -> S_{a + j}: rank {image.rank} of {image.target_dim}")
    return image.surjective


def gap_holds(ring: RingPresentation, a: int) -> bool:
    return component_basis(ring, 0) == [mono.unit(ring.nvars)] and all(
        not component_basis(ring, d) for d in range(1, a))


class TruncationFailure(BaseModel):
    j: int
    d: int
    missing: List[str]


class TruncationReport(BaseModel):
    a: int
    j_max: int
    holds: bool
    checked: int
    failures: List[TruncationFailure]


def truncation_power_check(ring: RingPresentation, a: int, j_max: int) -> TruncationReport:
    """Checks (m^j)_d = S_d for 1 <= j <= j_max and ja <= d <= ja + 2a, with m = S_{>=1}."""
    if a < 1:
        raise PreconditionError(f"a must be positive, got {a}")
    if not gap_holds(ring, a):
        raise PreconditionError(f"S_0 = k and S_j = 0 for 0 < j < {a} must hold first")
    components: Dict[int, GradedComponent] = {}

    def component(d: int) -> GradedComponent:
        if d not in components:
            components[d] = GradedComponent(ring, d)
        return components[d]

    # spans[d] holds a basis of (m^j)_d for the current j
    spans: Dict[int, List[Polynomial]] = {}
    for d in range(a, 3 * a + 1):
        spans[d] = [ring.ring.monomial(m) for m in component(d).basis]
    failures: List[TruncationFailure] = []
    checked = 0
    for j in range(1, j_max + 1):
        if j > 1:
            previous = spans
            spans = {}
            for d in range(j * a, j * a + 2 * a + 1):
                target = component(d)
                echelon = target.echelon()
                for e in range(a, d - (j - 1) * a + 1):
                    for m in component(e).basis:
                        for v in previous.get(d - e, []):
                            if echelon.rank == len(target):
                                break
                            echelon.add(target.vector(v.mul_monomial(m)))
                spans[d] = [target.polynomial(row) for row in echelon.rows.values()]
        for d in range(j * a, j * a + 2 * a + 1):
            target = component(d)
            checked += 1
            if len(spans[d]) < len(target):
                echelon = target.echelon()
                echelon.extend(target.vector(v) for v in spans[d])
                missing = target.format(echelon.free_columns(len(target)))
                failures.append(TruncationFailure(j=j, d=d, missing=missing))
    report = TruncationReport(a=a, j_max=j_max, holds=not failures, checked=checked, failures=failures)
    logger.info(f"Truncation check a={a}, j_max={j_max}: {'holds' if report.holds else 'fails'}")
    return report


def relation_orders(ring: RingPresentation) -> List[int]:
    """Order of each relation with respect to the ideal of all variables."""
    return [r.lowest_total_degree() for r in ring.relations]


class StrictIntersectionReport(BaseModel):
    orders: List[int]
    order_product: int
    multiplicity: int
    strict: bool


def strict_complete_intersection_test(ring: RingPresentation,
                                      params: Sequence[Polynomial]) -> StrictIntersectionReport:
    """Product of relation orders against the reduction-length multiplicity."""
    orders = relation_orders(ring)
    product = prod(orders)
    multiplicity = multiplicity_via_reduction(ring, params)
    return StrictIntersectionReport(orders=orders, order_product=product,
                                    multiplicity=multiplicity, strict=product == multiplicity)


class GenerationReport(BaseModel):
    lo: int
    hi: int
    up_to: int
    holds: bool
    first_gap: Optional[int] = None
    missing: List[str] = []


def generated_in_degrees(ring: RingPresentation, lo: int, hi: int, up_to: int) -> GenerationReport:
    """Whether S_lo..S_hi generate S as a k-algebra through degree ``up_to``."""
    if lo < 1 or hi < lo:
        raise PreconditionError(f"invalid degree window [{lo}, {hi}]")
    algebra: Dict[int, List[Polynomial]] = {0: [ring.ring.one()]}
    for d in range(1, up_to + 1):
        target = GradedComponent(ring, d)
        echelon = target.echelon()
        if lo <= d <= hi:
            echelon.extend({i: 1} for i in range(len(target)))
        else:
            for e in range(lo, min(hi, d - 1) + 1):
                for m in component_basis(ring, e):
                    for v in algebra.get(d - e, []):
                        if echelon.rank == len(target):
                            break
                        echelon.add(target.vector(v.mul_monomial(m)))
        algebra[d] = [target.polynomial(row) for row in echelon.rows.values()]
        if echelon.rank < len(target):
            missing = target.format(echelon.free_columns(len(target)))
            return GenerationReport(lo=lo, hi=hi, up_to=up_to, holds=False, first_gap=d, missing=missing)
    return GenerationReport(lo=lo, hi=hi, up_to=up_to, holds=True)
