import pytest

from algebra.errors import NotHomogeneousError, PreconditionError
from algebra.graded import (
    MULTIPLICITY_CAVEATS,
    GradedComponent,
    RingPresentation,
    component_basis,
    gap_holds,
    generated_in_degrees,
    is_complete_intersection,
    krull_dim,
    multiplication_image,
    multiplication_surjective,
    multiplicity_via_reduction,
    quotient_length,
    relation_orders,
    strict_complete_intersection_test,
    truncation_power_check,
)
from algebra.hilbert import INFINITE

from conftest import ci_ring, family_ring


def test_complete_intersection_dimension_and_witness(ci):
    assert krull_dim(ci) == 2
    witness = is_complete_intersection(ci)
    assert witness.complete_intersection
    assert witness.koszul_identity
    assert witness.relation_degrees == [6, 6, 6]
    assert witness.variables == 5 and witness.relations == 3


def test_three_relations_in_codimension_two_is_not_a_complete_intersection():
    ring = RingPresentation.of("x, y, z", ["x^2", "x*y", "y^2"])
    witness = is_complete_intersection(ring)
    assert witness.dimension == 1
    assert not witness.complete_intersection
    assert witness.koszul_identity is None


def test_cusp_is_a_hypersurface():
    cusp = RingPresentation.of("x:2, y:3", ["y^2 - x^3"])
    assert krull_dim(cusp) == 1
    assert is_complete_intersection(cusp).complete_intersection


def test_degree_two_component(ci):
    basis = component_basis(ci, 2)
    names = GradedComponent(ci, 2).format(range(len(basis)))
    assert names == ["x", "y", "z"]
    assert component_basis(ci, 1) == []
    assert component_basis(ci, -1) == []


def test_relation_must_be_homogeneous():
    with pytest.raises(NotHomogeneousError) as info:
        RingPresentation.of("s:3, x:2", ["s^2 - x^2"])
    assert info.value.degrees == [6, 4]


@pytest.mark.parametrize("f", ["y^3 + x^2*z", "y^3"])
def test_length_modulo_parameters_is_twelve(f):
    assert quotient_length(ci_ring(f), ["x", "z"]) == 12


def test_length_is_infinite_without_enough_generators(ci):
    assert quotient_length(ci, ["x"]) == INFINITE


def test_length_of_a_power_of_one_variable():
    line = RingPresentation.of("x")
    for n in range(1, 11):
        assert quotient_length(line, [f"x^{n}"]) == n


def test_length_rejects_mixed_degree_generators(ci):
    with pytest.raises(NotHomogeneousError) as info:
        quotient_length(ci, ["x", "z + s"])
    assert info.value.degrees == [3, 2]
    assert "generator 's + z'" in str(info.value)


def test_multiplicity_needs_a_full_parameter_system(ci):
    assert multiplicity_via_reduction(ci, ["x", "z"]) == 12
    with pytest.raises(PreconditionError):
        multiplicity_via_reduction(ci, ["x"])
    with pytest.raises(PreconditionError):
        multiplicity_via_reduction(ci, ["x", "x"])
    assert len(MULTIPLICITY_CAVEATS) == 2


@pytest.mark.parametrize("n, multiplicity, order_product", [(1, 2, 2), (2, 12, 8)])
def test_multiplicity_family(n, multiplicity, order_product):
    ring = family_ring(n)
    params = [f"x{i}{i}" for i in range(1, n + 1)]
    report = strict_complete_intersection_test(ring, params)
    assert report.multiplicity == multiplicity
    assert report.order_product == order_product
    assert report.strict == (n == 1)


@pytest.mark.slow
def test_multiplicity_family_three():
    ring = family_ring(3)
    report = strict_complete_intersection_test(ring, ["x11", "x22", "x33"])
    assert report.multiplicity == 2 ** 3 * 3 ** 3 == 216
    assert report.order_product == 64
    assert not report.strict


def test_relation_orders(ci):
    assert relation_orders(ci) == [2, 2, 2]


def test_weighted_ring_misses_square_of_y(weighted_xy):
    image = multiplication_image(weighted_xy, 2, 4)
    assert not image.surjective
    assert image.missing == ["y^2"]
    assert (image.rank, image.target_dim) == (1, 2)


def test_complete_intersection_multiplication_is_onto(ci):
    for j in range(2, 7):
        image = multiplication_image(ci, 2, j)
        assert image.surjective, f"j={j}: missing {image.missing}"


def test_multiplication_surjective_by_degree(weighted_xy, ci):
    assert multiplication_surjective(weighted_xy, 2, 3)
    assert not multiplication_surjective(weighted_xy, 2, 4)
    assert multiplication_surjective(ci, 2, 8)


def test_multiplication_rejects_nonpositive_degrees(ci):
    with pytest.raises(PreconditionError):
        multiplication_image(ci, 0, 2)


def test_gap(ci, polyring2):
    assert gap_holds(ci, 2)
    assert not gap_holds(ci, 3)
    assert gap_holds(polyring2, 1)
    assert not gap_holds(polyring2, 2)


def test_generation_in_degrees_two_and_three(weighted_xy, polyring2):
    assert generated_in_degrees(weighted_xy, 2, 3, 12).holds
    report = generated_in_degrees(weighted_xy, 2, 2, 6)
    assert not report.holds
    assert report.first_gap == 3
    assert report.missing == ["y"]
    assert generated_in_degrees(polyring2, 1, 1, 5).holds


def test_truncation_power_fails_first_at_j_three(weighted_xy):
    report = truncation_power_check(weighted_xy, 2, 4)
    assert not report.holds
    first = report.failures[0]
    assert (first.j, first.d) == (3, 6)
    assert first.missing == ["y^2"]


def test_truncation_power_holds_for_complete_intersection(ci):
    report = truncation_power_check(ci, 2, 3)
    assert report.holds
    assert report.failures == []


def test_truncation_power_holds_for_standard_graded_ring(polyring2):
    report = truncation_power_check(polyring2, 1, 5)
    assert report.holds
    assert report.checked == 15


def test_truncation_requires_gap(polyring2):
    with pytest.raises(PreconditionError):
        truncation_power_check(polyring2, 2, 3)
