"""Testing jet algebra behavior"""

from fractions import Fraction

import numpy as np
import pytest

from cmkdv.errors import JetOrderOverflow, MissingGenerator, NotExact, ZeroDegreeWeight
from cmkdv.jet import (
    ComplexJetPoly,
    JetPoint,
    JetPoly,
    JetSpace,
    euler_operator,
    evaluate_at,
    inverse_degree,
    invert_total_x_derivative,
    is_total_x_derivative,
    jet_name,
    jet_space,
    reduce_order,
    scale_substitute,
    total_t_derivative,
    total_x_derivative,
)
from cmkdv.models import Coefficients


@pytest.fixture
def u1():
    return JetPoly.jet(1, 0)


@pytest.fixture
def u2():
    return JetPoly.jet(2, 0)


@pytest.fixture
def u1x():
    return JetPoly.jet(1, 1)


@pytest.fixture
def u1xx():
    return JetPoly.jet(1, 2)


@pytest.fixture
def hirota():
    return Coefficients.from_complex(1, 0)


def test_generator_order():
    space = jet_space(2)
    assert space.names == ("t", "x", "u1", "u2", "u1_x", "u2_x", "u1_xx", "u2_xx")
    assert JetSpace.index(2, 1) == 5
    assert JetSpace.locate(6) == (1, 2)
    assert jet_name(1, 4) == "u1_4x"


def test_spaces_are_shared():
    assert jet_space(5) is jet_space(5)


def test_equal_across_caps():
    small, large = JetPoly.jet(1, 0, cap=3), JetPoly.jet(1, 0, cap=7)
    assert small == large
    assert hash(small) == hash(large)


def test_narrow_overflow():
    with pytest.raises(JetOrderOverflow):
        JetPoly.jet(1, 5).narrow(3)


def test_total_x_derivative(u1, u2, u1x):
    assert total_x_derivative(u1 * u2) == u1x * u2 + u1 * JetPoly.jet(2, 1)
    assert total_x_derivative(JetPoly.x() * u1) == u1 + JetPoly.x() * u1x


def test_total_x_derivative_at_cap():
    with pytest.raises(JetOrderOverflow):
        total_x_derivative(JetPoly.jet(1, 7))


def test_complex_modulus():
    u = ComplexJetPoly.u()
    modulus = u * u.conj()
    assert modulus.im.is_zero
    assert modulus.re == JetPoly.jet(1, 0) ** 2 + JetPoly.jet(2, 0) ** 2


def test_complex_constant():
    value = ComplexJetPoly.constant("1/2-3i")
    assert value.re == JetPoly.constant(Fraction(1, 2))
    assert value.im == JetPoly.constant(-3)


def test_momentum_rate_is_exact(hirota):
    density = (ComplexJetPoly.u() * ComplexJetPoly.ubar()).re
    rate = total_t_derivative(density, hirota)
    assert is_total_x_derivative(rate)


def test_mass_rate_is_not_exact_without_case():
    coeffs = Coefficients.from_complex(1, 1)
    rate = total_t_derivative(JetPoly.jet(1, 0), coeffs)
    assert not is_total_x_derivative(rate)


def test_euler_operator(u1, u1xx):
    assert euler_operator(u1 * u1xx, 1) == 2 * u1xx
    assert euler_operator(u1 * u1xx, 2).is_zero


def test_euler_kills_total_derivatives(u1, u2):
    p = total_x_derivative(u1**2 * u2 * JetPoly.jet(2, 1))
    assert is_total_x_derivative(p)
    assert euler_operator(p, 1).is_zero


def test_invert_total_x_derivative(u1, u2):
    q = u1 * JetPoly.jet(2, 1) + u1**3 * u2
    assert invert_total_x_derivative(total_x_derivative(q)) == q


def test_invert_pure_part():
    assert invert_total_x_derivative(JetPoly.x() * 2) == JetPoly.x() ** 2


def test_invert_not_exact(u1):
    with pytest.raises(NotExact):
        invert_total_x_derivative(u1**2)


def test_reduce_order(u1, u1x, u1xx):
    assert reduce_order(u1 * u1xx) == -(u1x**2)


def test_scale_substitute(u1, u2):
    p = u1 + u1**2 * u2
    assert scale_substitute(p, inverse_degree) == u1 + Fraction(1, 3) * u1**2 * u2


def test_zero_degree_weight():
    with pytest.raises(ZeroDegreeWeight):
        scale_substitute(JetPoly.constant(1), inverse_degree)


def test_evaluate_vectorized(u1):
    p = u1**2 + JetPoly.x()
    values = p.evaluate([0.0, np.array([1.0, 2.0]), np.array([3.0, 4.0])])
    np.testing.assert_allclose(values, [10.0, 18.0])


def test_missing_generator(u1x):
    with pytest.raises(MissingGenerator):
        u1x.evaluate([0.0, 0.0, 1.0, 1.0])


def test_evaluate_at_point(u1, u1x):
    point = JetPoint.from_components(u1=[2.0, 3.0], u2=[0.0, 1.0], x=1.0)
    assert evaluate_at(u1 * u1x + JetPoly.x(), point) == pytest.approx(7.0)


def test_json_round_trip(u1, u2):
    p = Fraction(3, 4) * u1 * JetPoly.jet(2, 3) - u2**2 * JetPoly.t()
    assert JetPoly.from_json(p.to_json()) == p
