import pytest

from algebra.errors import AlgebraError, PreconditionError
from algebra.fields import CoefficientField
from algebra.graded import RingPresentation
from conftest import ci_ring
from checker import (
    BOUNDED,
    CERTIFIED,
    FAILED,
    SectionRingCertificate,
    UnitCertificate,
    VerdictConfig,
    check_gap_condition,
    check_section_ring_certificate,
    check_surjectivity_condition,
    ulrich_verdict,
    verify_section_ring_certificate,
)
from presentation import load_presentation

MODULE_GENS = ["1", "s", "t"]


def ci_certificate(inverse_for_x: str = "s") -> SectionRingCertificate:
    return SectionRingCertificate(params=["x", "z"], unit_certs=[
        UnitCertificate(param="x", numerator="s", denom_power=1, inverse=inverse_for_x, inverse_power=2),
        UnitCertificate(param="z", numerator="t", denom_power=1, inverse="t", inverse_power=2),
    ])


def full_config(**overrides) -> VerdictConfig:
    values = dict(a=2, j_max=8, module_gens=MODULE_GENS, section_cert=ci_certificate())
    values.update(overrides)
    return VerdictConfig(**values)


def test_gap_condition(ci, polyring2, weighted_xy):
    assert check_gap_condition(ci, 2)
    assert check_gap_condition(weighted_xy, 2)
    assert not check_gap_condition(polyring2, 2)
    with pytest.raises(PreconditionError):
        check_gap_condition(ci, 1)


def test_surjectivity_certified_by_module_generators(ci):
    report = check_surjectivity_condition(ci, 2, 8, MODULE_GENS)
    assert report.status == CERTIFIED
    assert report.gap_ok
    assert [e.j for e in report.surjectivity] == list(range(2, 9))
    assert report.stability.holds
    assert report.stability.max_generator_degree == 3


def test_surjectivity_without_generators_is_bounded(ci):
    assert check_surjectivity_condition(ci, 2, 6).status == BOUNDED


def test_insufficient_module_generators_do_not_certify(ci):
    report = check_surjectivity_condition(ci, 2, 6, ["1", "s"])
    assert report.status == BOUNDED
    assert not report.stability.holds
    assert report.stability.span_failures


def test_weighted_ring_fails_at_j_four(weighted_xy):
    report = check_surjectivity_condition(weighted_xy, 2, 8)
    assert report.status == FAILED
    failing = [e for e in report.surjectivity if not e.surjective]
    assert failing[0].j == 4
    assert failing[0].missing == ["y^2"]


def test_surjectivity_arguments_validated(ci):
    with pytest.raises(PreconditionError):
        check_surjectivity_condition(ci, 1, 5)
    with pytest.raises(PreconditionError):
        check_surjectivity_condition(ci, 3, 2)


@pytest.mark.parametrize("f", ["y^3 + x^2*z", "y^3"])
def test_section_ring_certificate_holds(f):
    ring = ci_ring(f)
    report = check_section_ring_certificate(ring, ci_certificate())
    assert report.holds
    assert all(report.radical.values())
    assert [(u.unit_degree, u.inverse_degree) for u in report.units] == [(1, -1), (1, -1)]


def test_corrupted_certificate_is_rejected(ci):
    report = check_section_ring_certificate(ci, ci_certificate(inverse_for_x="t"))
    assert not report.holds
    assert not report.units[0].product_in_ideal
    assert report.units[1].holds


def test_certificate_must_cover_every_parameter(ci):
    cert = SectionRingCertificate(params=["x", "z"], unit_certs=ci_certificate().unit_certs[:1])
    assert not verify_section_ring_certificate(ci, cert)


def test_radical_failure_when_parameters_are_too_few(ci):
    cert = SectionRingCertificate(params=["x"], unit_certs=ci_certificate().unit_certs[:1])
    report = check_section_ring_certificate(ci, cert)
    assert not report.holds
    assert not report.radical["z"]


def test_certificate_models_forbid_unknown_fields():
    with pytest.raises(ValueError):
        UnitCertificate(param="x", numerator="s", denom_power=1, inverse="s", inverse_power=2, extra=1)


@pytest.mark.parametrize("f", ["y^3 + x^2*z", "y^3"])
def test_complete_intersections_have_no_ulrich_modules(f):
    verdict = ulrich_verdict(ci_ring(f), full_config())
    assert verdict.conclusion == "NoUlrichModules"
    assert verdict.assumed == []
    assert verdict.verified == ["dimension", "gap", "surjectivity", "section-ring", "depth"]
    assert verdict.scope
    assert verdict.caveats == []


def test_regular_ring_is_inconclusive(polyring2):
    verdict = ulrich_verdict(polyring2, VerdictConfig(a=2, j_max=4))
    assert verdict.conclusion == "Inconclusive"
    assert verdict.ledger[1].tag == "gap"
    assert verdict.ledger[1].status == "failed"
    assert verdict.scope == []


def test_weighted_ring_is_inconclusive(weighted_xy):
    verdict = ulrich_verdict(weighted_xy, VerdictConfig(a=2, j_max=8))
    assert verdict.conclusion == "Inconclusive"
    assert verdict.ledger[2].status == "failed"


def test_missing_certificate_blocks_the_conclusion(ci):
    verdict = ulrich_verdict(ci, full_config(section_cert=None))
    assert verdict.conclusion == "Inconclusive"
    assert verdict.ledger[3].status == "unverified"


def test_acknowledged_assumptions_are_listed(ci):
    verdict = ulrich_verdict(ci, full_config(section_cert=None, module_gens=None, acknowledge_assumptions=True))
    assert verdict.conclusion == "NoUlrichModules"
    assert verdict.assumed == ["surjectivity", "section-ring"]


def test_acknowledgement_never_overrides_a_failure(weighted_xy):
    verdict = ulrich_verdict(weighted_xy, VerdictConfig(a=2, j_max=8, acknowledge_assumptions=True))
    assert verdict.conclusion == "Inconclusive"


def test_failure_is_stable_under_larger_bounds(weighted_xy):
    for j_max in (4, 6, 8):
        assert ulrich_verdict(weighted_xy, VerdictConfig(a=2, j_max=j_max)).conclusion == "Inconclusive"


def test_small_characteristic_adds_a_caveat():
    ring = RingPresentation.of("x, y", field_spec=CoefficientField.prime(3))
    verdict = ulrich_verdict(ring, VerdictConfig(a=2, j_max=4))
    assert verdict.caveats
    assert "characteristic 3" in verdict.caveats[0]


UNIT_MUTATIONS = {
    "x ; s ; 1 ; s ; 2": [["y", "z", "s"], ["t", "2*s", "y"], ["0", "2", "3"], ["t", "2*s", "y"], ["0", "1", "3"]],
    "z ; t ; 1 ; t ; 2": [["y", "x", "t"], ["s", "2*t", "y"], ["0", "2", "3"], ["s", "2*t", "y"], ["0", "1", "3"]],
}


def unit_mutants():
    for line, replacements in UNIT_MUTATIONS.items():
        fields = line.split(" ; ")
        for position, values in enumerate(replacements):
            for value in values:
                mutated = list(fields)
                mutated[position] = value
                yield line, " ; ".join(mutated)


@pytest.mark.parametrize("line, mutated", list(unit_mutants()))
def test_every_unit_field_matters(corpus_dir, tmp_path, line, mutated):
    text = (corpus_dir / "ci_y3_x2z.ring").read_text(encoding="utf-8")
    assert f"unit: {line}" in text
    path = tmp_path / "mutant.ring"
    path.write_text(text.replace(f"unit: {line}", f"unit: {mutated}"), encoding="utf-8")
    try:
        loaded = load_presentation(path)
    except AlgebraError:
        return
    assert not verify_section_ring_certificate(loaded.ring, loaded.section_cert)


def test_unmutated_corpus_certificate_holds(corpus_dir):
    loaded = load_presentation(corpus_dir / "ci_y3_x2z.ring")
    assert verify_section_ring_certificate(loaded.ring, loaded.section_cert)


def test_surjectivity_status_is_stable_on_prefixes(ci, weighted_xy):
    full = check_surjectivity_condition(ci, 2, 8, MODULE_GENS)
    for j_max in range(2, 9):
        report = check_surjectivity_condition(ci, 2, j_max, MODULE_GENS)
        assert report.status == CERTIFIED, f"j_max={j_max}"
        assert report.surjectivity == full.surjectivity[:j_max - 1]
    with pytest.raises(PreconditionError):
        check_surjectivity_condition(ci, 2, 1, MODULE_GENS)
    statuses = [check_surjectivity_condition(weighted_xy, 2, j_max).status for j_max in range(2, 9)]
    assert statuses == [BOUNDED, BOUNDED] + [FAILED] * 5
