import pytest

from algebra.errors import PreconditionError
from algebra.graded import RingPresentation
from algebra.groebner import IdealPresentation, ideal_equal, ideal_membership
from algebra.rees import (
    associated_graded,
    is_maximal_ideal,
    rees_presentation,
    regrading_check,
    transfer,
    verify_surjection,
)

CI_GENERATORS = ["s", "t", "x", "y", "z"]


@pytest.fixture
def cusp():
    return RingPresentation.of("x:2, y:3", ["y^2 - x^3"], name="cusp")


def same_ideal(ring: RingPresentation, expected):
    return ideal_equal(ring.ideal, IdealPresentation.of(ring.ring, expected))


def test_rees_of_maximal_ideal_in_two_variables(polyring2):
    rees = rees_presentation(polyring2, ["x", "y"])
    assert rees.t_names == ["T1", "T2"]
    assert rees.result.ring.weights == (1, 1, 2, 2)
    assert same_ideal(rees.result, ["x*T2 - y*T1"])
    assert rees.relations_vanish()


def test_rees_of_square_is_given_by_minors(polyring2):
    rees = rees_presentation(polyring2, ["x^2", "x*y", "y^2"])
    assert same_ideal(rees.result, ["x*T2 - y*T1", "x*T3 - y*T2", "T1*T3 - T2^2"])
    assert rees.relations_vanish()


def test_rees_keeps_base_relations(cusp):
    rees = rees_presentation(cusp, ["x", "y"])
    ring = rees.result
    assert ideal_membership(ring.parse("y^2 - x^3"), ring.ideal)
    assert ideal_membership(ring.parse("T2^2 - x*T1^2"), ring.ideal)


@pytest.mark.parametrize("method", ["rees", "truncation"])
def test_tangent_cone_of_cusp(cusp, method):
    gr = associated_graded(cusp, ["x", "y"], method)
    assert gr.ring.names == ("T1", "T2")
    assert same_ideal(gr, ["T2^2"])
    assert regrading_check(cusp, ["x", "y"], gr)


def test_gr_of_a_non_maximal_ideal_keeps_base_variables(polyring2):
    gr = associated_graded(polyring2, ["x^2", "x*y", "y^2"])
    assert gr.ring.names == ("x", "y", "T1", "T2", "T3")
    assert ideal_membership(gr.parse("x^2"), gr.ideal)
    assert ideal_membership(gr.parse("x*T2 - y*T1"), gr.ideal)
    assert not ideal_membership(gr.parse("x"), gr.ideal)


def test_maximal_ideal_detection(polyring2, ci):
    assert is_maximal_ideal(polyring2, ["x", "y"])
    assert not is_maximal_ideal(polyring2, ["x^2", "x*y", "y^2"])
    assert not is_maximal_ideal(polyring2, ["x"])
    assert is_maximal_ideal(ci, CI_GENERATORS)


def test_transfer_renames_variables(cusp):
    gr = associated_graded(cusp, ["x", "y"], "truncation")
    assert transfer("x*y^2", cusp, ["x", "y"], gr) == gr.parse("T1*T2^2")


def test_complete_intersection_surjects_onto_displayed_ring(ci):
    gr = associated_graded(ci, CI_GENERATORS, "truncation")
    vanishing = verify_surjection(ci, CI_GENERATORS, gr,
                                  ["s^2", "s*t", "t^2", "x^3*z^3 - (y^3 + x^2*z)^2"])
    assert all(vanishing.values()), vanishing
    assert regrading_check(ci, CI_GENERATORS, gr)
    assert verify_surjection(ci, CI_GENERATORS, gr, ["x"]) == {"x": False}


def test_invalid_generators_rejected(polyring2):
    with pytest.raises(PreconditionError):
        rees_presentation(polyring2, [])
    with pytest.raises(PreconditionError):
        rees_presentation(polyring2, ["x + y^2"])
    with pytest.raises(PreconditionError):
        associated_graded(polyring2, ["x", "y"], method="blowup")
    with pytest.raises(PreconditionError):
        associated_graded(polyring2, ["x^2", "y"], method="truncation")


def test_rees_variable_names_are_reserved():
    base = RingPresentation.of("T1, y")
    with pytest.raises(PreconditionError):
        rees_presentation(base, ["T1", "y"])
