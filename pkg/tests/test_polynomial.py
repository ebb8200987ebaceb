from fractions import Fraction

import pytest

from algebra.errors import AmbientMismatchError, PreconditionError, UnassignedVariableError
from algebra.fields import CoefficientField, QQ
from algebra.polynomial import homogeneous_components, multiply, substitute
from algebra.rings import PolynomialRing, VariableTable

CI = PolynomialRing.of("s:3, t:3, x:2, y:2, z:2")


def test_binomial_has_two_terms_of_degree_six():
    p = CI.parse("s^2 - x^3")
    assert len(p) == 2
    assert p.degrees() == [6]
    assert p.is_homogeneous()


def test_expansion_of_squared_relation():
    p = CI.parse("(y^3+x^2*z)^2 - x^3*z^3")
    expected = CI.parse("y^6 + 2*x^2*y^3*z + x^4*z^2 - x^3*z^3")
    assert p == expected
    assert len(p) == 4


def test_multiply_matches_operator():
    f = CI.parse("y^3 + x^2*z")
    assert multiply(f, f) == CI.parse("y^6 + 2*x^2*y^3*z + x^4*z^2")
    assert multiply(f, f) == f * f == f ** 2


def test_zero_and_constants():
    zero = CI.zero()
    assert not zero
    assert zero.degree() == -1
    assert CI.parse("x - x") == zero
    assert CI.parse("3") == 3
    assert (CI.one() * 5) == CI.constant(5)


def test_rational_coefficients_stay_exact():
    p = CI.parse("1/2*x + 1/3*x")
    assert p.coefficient((0, 0, 1, 0, 0)) == Fraction(5, 6)


def test_homogeneous_components_split_by_weighted_degree():
    p = CI.parse("s^2 - x^3 + y + z^2")
    parts = homogeneous_components(p)
    assert list(parts) == [6, 4, 2]
    assert parts[6] == CI.parse("s^2 - x^3")
    assert parts[2] == CI.parse("y")
    assert not p.is_homogeneous()


def test_single_component_for_relation():
    assert homogeneous_components(CI.parse("s^2 - x^3")) == {6: CI.parse("s^2 - x^3")}


def test_substitute_y_to_one():
    xz = PolynomialRing.of("x, z")
    p = CI.parse("(y^3+x^2*z)^2 - x^3*z^3")
    same_ring = substitute(p, {"y": 1, "s": 0, "t": 0}, CI)
    assert same_ring == CI.parse("x^4*z^2 - x^3*z^3 + 2*x^2*z + 1")
    special = substitute(p, {"y": xz.one(), "s": xz.zero(), "t": xz.zero()}, xz)
    assert special == xz.parse("x^4*z^2 - x^3*z^3 + 2*x^2*z + 1")


def test_substitute_into_monomial_ring_kills_relation():
    uv = PolynomialRing.of("u, v")
    p = CI.parse("s^2 - x^3")
    images = {"s": uv.parse("u^3"), "t": uv.parse("v^3"), "x": uv.parse("u^2"),
              "y": uv.parse("u*v"), "z": uv.parse("v^2")}
    assert not substitute(p, images, uv)
    assert not p.substitute(images, uv)


def test_substitute_needs_every_variable():
    uv = PolynomialRing.of("u, v")
    with pytest.raises(UnassignedVariableError):
        substitute(CI.parse("s"), {"x": uv.parse("u")}, uv)


def test_ambient_mismatch_is_rejected():
    other = PolynomialRing.of("x, y")
    with pytest.raises(AmbientMismatchError):
        _ = CI.parse("x") + other.parse("x")


def test_embed_into_larger_ring_and_back():
    small = PolynomialRing.of("x:2, z:2")
    p = small.parse("x^2*z - z^3")
    big = p.embed(CI)
    assert big == CI.parse("x^2*z - z^3")
    assert big.embed(small) == p
    with pytest.raises(AmbientMismatchError):
        CI.parse("s*x").embed(small)


def test_prime_field_arithmetic_wraps():
    ring = PolynomialRing(VariableTable.of("x, y"), CoefficientField.prime(5))
    p = ring.parse("3*x + 4*x")
    assert p == ring.parse("2*x")
    assert ring.parse("5*y") == ring.zero()
    assert (ring.parse("x + 1") ** 5) == ring.parse("x^5 + 1")


def test_non_prime_modulus_rejected():
    with pytest.raises(PreconditionError):
        CoefficientField.prime(6)


def test_characteristic_flags():
    assert QQ.safe_characteristic
    assert CoefficientField.prime(5).safe_characteristic
    assert not CoefficientField.prime(3).safe_characteristic
    assert str(CoefficientField.from_spec("GF(7)")) == "GF(7)"


def test_leading_term_follows_weighted_grevlex():
    p = CI.parse("x^2*z + y^3 + s*t")
    assert str(p) == "s*t + y^3 + x^2*z"
    assert p.leading_monomial() == (1, 1, 0, 0, 0)


def test_variables_and_lowest_degree():
    p = CI.parse("s^2 - x^3")
    assert p.variables() == ("s", "x")
    assert p.lowest_total_degree() == 2


def test_negative_exponent_rejected():
    with pytest.raises(PreconditionError):
        CI.parse("x") ** -1
