"""
Checker: turns graded computations into the hypothesis ledger behind a
"no Ulrich modules" verdict.

Every hypothesis ends up verified, assumed (only with explicit
acknowledgement), failed or unverified. The conclusion NoUlrichModules is
emitted only when nothing is failed or unverified.
"""

from typing import Dict, List, Optional, Tuple

from loguru import logger
from pydantic import BaseModel, ConfigDict

from algebra.errors import PreconditionError
from algebra.graded import (
    RingPresentation,
    GradedComponent,
    component_basis,
    gap_holds,
    is_complete_intersection,
    krull_dim,
    multiplication_image,
)
from algebra.groebner import IdealPresentation, radical_membership
from algebra.polynomial import Polynomial

CERTIFIED = "certified for all j >= a"
BOUNDED = "verified up to j_max only"
FAILED = "failed"

SCOPE = ["local ring at the irrelevant maximal ideal", "its m-adic completion"]


class UnitCertificate(BaseModel):
    """The degree-one unit numerator / param^denom_power, with inverse inverse / param^inverse_power."""

    model_config = ConfigDict(extra="forbid")

    param: str
    numerator: str
    denom_power: int
    inverse: str
    inverse_power: int


class SectionRingCertificate(BaseModel):
    model_config = ConfigDict(extra="forbid")

    params: List[str]
    unit_certs: List[UnitCertificate]


class UnitCheck(BaseModel):
    param: str
    unit_degree: Optional[int] = None
    inverse_degree: Optional[int] = None
    product_in_ideal: bool = False
    holds: bool = False
    note: Optional[str] = None


class SectionCertificateReport(BaseModel):
    holds: bool
    radical: Dict[str, bool]
    units: List[UnitCheck]
    note: Optional[str] = None


class SurjectivityEntry(BaseModel):
    j: int
    surjective: bool
    missing: List[str] = []


class StabilityCertificate(BaseModel):
    module_gens: List[str]
    max_generator_degree: int
    contains_one: bool
    closure_failures: List[str]
    span_checked_up_to: int
    span_failures: List[int]
    holds: bool


class ConditionReport(BaseModel):
    a: int
    j_max: int
    gap_ok: bool
    gap_degrees_checked: Tuple[int, int]
    surjectivity: List[SurjectivityEntry]
    stability: Optional[StabilityCertificate] = None
    status: str


class HypothesisEntry(BaseModel):
    tag: str
    status: str
    discharges: str
    detail: str = ""


class VerdictConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a: int = 2
    j_max: int = 20
    module_gens: Optional[List[str]] = None
    section_cert: Optional[SectionRingCertificate] = None
    acknowledge_assumptions: bool = False


class UlrichVerdict(BaseModel):
    conclusion: str
    verified: List[str]
    assumed: List[str]
    ledger: List[HypothesisEntry]
    scope: List[str]
    caveats: List[str]
    artifacts: Dict[str, dict]


def check_gap_condition(ring: RingPresentation, a: int) -> bool:
    """S_0 = k and S_j = 0 for 1 <= j <= a - 1."""
    if a < 2:
        raise PreconditionError(f"the gap condition needs a >= 2, got {a}")
    holds = gap_holds(ring, a)
    logger.info(f"Gap condition for a={a}: {holds}")
    return holds


class _ModuleSpan:
    """Degree pieces of M = sum k[S_a] * g over the module generators."""

    def __init__(self, ring: RingPresentation, a: int, gens: List[Polynomial]):
        self.ring = ring
        self.a = a
        self.gens = gens
        self.components: Dict[int, GradedComponent] = {}
        self.powers: Dict[int, List[Polynomial]] = {0: [ring.ring.one()]}

    def component(self, d: int) -> GradedComponent:
        if d not in self.components:
            self.components[d] = GradedComponent(self.ring, d)
        return self.components[d]

    def power(self, k: int) -> List[Polynomial]:
        """Spanning rows of (S_a)^k."""
        if k not in self.powers:
            previous = self.power(k - 1)
            target = self.component(k * self.a)
            echelon = target.echelon()
            for m in component_basis(self.ring, self.a):
                for v in previous:
                    echelon.add(target.vector(v.mul_monomial(m)))
            self.powers[k] = [target.polynomial(row) for row in echelon.rows.values()]
        return self.powers[k]

    def echelon(self, d: int):
        target = self.component(d)
        echelon = target.echelon()
        for g in self.gens:
            rest = d - g.degree()
            if rest < 0 or rest % self.a:
                continue
            for v in self.power(rest // self.a):
                echelon.add(target.vector(v * g))
        return target, echelon

    def contains(self, p: Polynomial) -> bool:
        target, echelon = self.echelon(p.degree())
        return echelon.contains(target.vector(p))

    def spans(self, d: int) -> bool:
        target, echelon = self.echelon(d)
        return echelon.rank == len(target)


def _stability(ring: RingPresentation, a: int, j_max: int, module_gens: List[str]) -> StabilityCertificate:
    gens = [ring.parse(g) for g in module_gens]
    for g in gens:
        if not g or not g.is_homogeneous():
            raise PreconditionError(f"module generator '{g}' must be nonzero and homogeneous")
    span = _ModuleSpan(ring, a, gens)
    contains_one = span.contains(ring.ring.one())
    closure_failures = []
    for v in ring.ring.names:
        for g in gens:
            product = ring.normal_form(ring.ring.gen(v) * g)
            if product and not span.contains(product):
                closure_failures.append(f"{v}*({g})")
    limit = j_max + 2 * a
    span_failures = [d for d in range(limit + 1) if not span.spans(d)]
    max_degree = max(g.degree() for g in gens)
    holds = contains_one and not closure_failures and not span_failures and max_degree <= j_max + 1
    return StabilityCertificate(
        module_gens=[str(g) for g in gens],
        max_generator_degree=max_degree,
        contains_one=contains_one,
        closure_failures=closure_failures,
        span_checked_up_to=limit,
        span_failures=span_failures,
        holds=holds,
    )


def check_surjectivity_condition(ring: RingPresentation, a: int, j_max: int,
                                 module_gens: Optional[List[str]] = None) -> ConditionReport:
    """S_a (x) S_j -> S_{a+j} onto for a <= j <= j_max, plus the finite stability certificate.

    With module generators g_i such that S = sum k[S_a] g_i (checked through
    1 in M and v * g_i in M for every variable v), surjectivity holds for every
    j >= max deg g_i, so the direct checks cover the rest when
    max deg g_i <= j_max + 1.
    """
    if a < 2:
        raise PreconditionError(f"a must be at least 2, got {a}")
    if j_max < a:
        raise PreconditionError(f"j_max must be at least a, got j_max={j_max}, a={a}")
    gap_ok = gap_holds(ring, a)
    entries = []
    for j in range(a, j_max + 1):
        image = multiplication_image(ring, a, j)
        entries.append(SurjectivityEntry(j=j, surjective=image.surjective, missing=image.missing))
    stability = _stability(ring, a, j_max, module_gens) if module_gens else None
    if not all(e.surjective for e in entries):
        status = FAILED
    elif stability is not None and stability.holds:
        status = CERTIFIED
    else:
        status = BOUNDED
    logger.info(f"Surjectivity condition a={a}, j_max={j_max}: {status}")
    return ConditionReport(a=a, j_max=j_max, gap_ok=gap_ok, gap_degrees_checked=(0, a - 1),
                           surjectivity=entries, stability=stability, status=status)


def check_section_ring_certificate(ring: RingPresentation,
                                   cert: SectionRingCertificate) -> SectionCertificateReport:
    params = [ring.parse(p) for p in cert.params]
    ideal = IdealPresentation(ring.ring, ring.relations + tuple(params))
    radical = {v: radical_membership(ring.ring.gen(v), ideal) for v in ring.ring.names}
    units: List[UnitCheck] = []
    note = None
    if len(cert.unit_certs) != len(params):
        note = f"{len(cert.unit_certs)} unit certificates for {len(params)} parameters"
    by_param = {str(p): p for p in params}
    for uc in cert.unit_certs:
        x = ring.parse(uc.param)
        check = UnitCheck(param=str(x))
        if str(x) not in by_param:
            check.note = "not one of the parameters"
            units.append(check)
            continue
        num, inv = ring.parse(uc.numerator), ring.parse(uc.inverse)
        if not (num and inv and num.is_homogeneous() and inv.is_homogeneous() and x.is_homogeneous()):
            check.note = "numerator, inverse and parameter must be nonzero and homogeneous"
            units.append(check)
            continue
        check.unit_degree = num.degree() - uc.denom_power * x.degree()
        check.inverse_degree = inv.degree() - uc.inverse_power * x.degree()
        check.product_in_ideal = not ring.normal_form(num * inv - x ** (uc.denom_power + uc.inverse_power))
        check.holds = check.unit_degree == 1 and check.inverse_degree == -1 and check.product_in_ideal
        units.append(check)
    covered = {u.param for u in units if u.holds}
    holds = (all(radical.values()) and note is None and len(units) == len(params)
             and covered == set(by_param))
    return SectionCertificateReport(holds=holds, radical=radical, units=units, note=note)


def verify_section_ring_certificate(ring: RingPresentation, cert: SectionRingCertificate) -> bool:
    """Radical of the parameters is S_{>=1} and each S_x has a unit of degree 1."""
    report = check_section_ring_certificate(ring, cert)
    logger.info(f"Section ring certificate: {report.holds}")
    return report.holds


def _caveats(ring: RingPresentation) -> List[str]:
    caveats = []
    field = ring.ring.field
    if not field.safe_characteristic:
        caveats.append(f"characteristic {field.characteristic} < 5: the criteria are only established "
                       "in characteristic 0 or p >= 5")
    return caveats


def ulrich_verdict(ring: RingPresentation, config: VerdictConfig) -> UlrichVerdict:
    ack = config.acknowledge_assumptions
    ledger: List[HypothesisEntry] = []
    artifacts: Dict[str, dict] = {}

    def unconfirmed() -> str:
        return "assumed" if ack else "unverified"

    dim = krull_dim(ring)
    ledger.append(HypothesisEntry(
        tag="dimension",
        status="verified" if dim >= 2 else "failed",
        discharges="the projective scheme has dimension >= 1 (Krull dimension >= 2)",
        detail=f"krull_dim = {dim}"))

    gap_ok = config.a >= 2 and gap_holds(ring, config.a)
    ledger.append(HypothesisEntry(
        tag="gap",
        status="verified" if gap_ok else "failed",
        discharges="S_0 = k and S_j = 0 for 1 <= j <= a-1",
        detail=f"a = {config.a}"))

    if gap_ok and config.j_max >= config.a:
        condition = check_surjectivity_condition(ring, config.a, config.j_max, config.module_gens)
        artifacts["surjectivity"] = condition.model_dump()
        status = {CERTIFIED: "verified", FAILED: "failed"}.get(condition.status, unconfirmed())
        detail = condition.status
    else:
        status, detail = "unverified", "skipped: gap condition or j_max range not satisfied"
    ledger.append(HypothesisEntry(
        tag="surjectivity",
        status=status,
        discharges="S_a (x) S_j -> S_{a+j} is surjective for all j >= a",
        detail=detail))

    if config.section_cert is not None:
        report = check_section_ring_certificate(ring, config.section_cert)
        artifacts["section_ring"] = report.model_dump()
        status, detail = ("verified" if report.holds else "failed"), "certificate checked"
    else:
        status, detail = unconfirmed(), "no certificate supplied"
    ledger.append(HypothesisEntry(
        tag="section-ring",
        status=status,
        discharges="S is the section ring of an ample line bundle (radical and degree-one units)",
        detail=detail))

    witness = is_complete_intersection(ring)
    artifacts["complete_intersection"] = witness.model_dump()
    ledger.append(HypothesisEntry(
        tag="depth",
        status="verified" if witness.complete_intersection else unconfirmed(),
        discharges="depth S >= 2 (complete intersection, hence Cohen-Macaulay of dimension >= 2)",
        detail="complete intersection" if witness.complete_intersection else "not certified by the complete-intersection route"))

    verified = [e.tag for e in ledger if e.status == "verified"]
    assumed = [e.tag for e in ledger if e.status == "assumed"]
    blocked = any(e.status in ("failed", "unverified") for e in ledger)
    conclusion = "Inconclusive" if blocked or not verified or dim < 2 else "NoUlrichModules"
    logger.info(f"Verdict: {conclusion} (verified {verified}, assumed {assumed})")
    return UlrichVerdict(conclusion=conclusion, verified=verified, assumed=assumed, ledger=ledger,
                         scope=SCOPE if conclusion == "NoUlrichModules" else [],
                         caveats=_caveats(ring), artifacts=artifacts)
