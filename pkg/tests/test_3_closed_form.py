"""Testing closed-form solutions behavior"""

import math

import numpy as np
import pytest

from cmkdv.errors import InvalidSolution, JetAtCusp
from cmkdv.method import closed_form
from cmkdv.models import Coefficients, Family, Grid, SolutionSpec
from cmkdv.utils import residual_nodes

RESIDUAL_TOLERANCE = 1e-9

HIROTA = Coefficients.from_complex(1, 0)
REAL_SUM = Coefficients.from_complex("2+i", "1-i")
AIRY = Coefficients.from_complex(1, -1)
NEGATIVE_SUM = Coefficients.from_complex("-2+i", "-1-i")
NEGATIVE_HIROTA = Coefficients.from_complex(-1, 0)
PEAKON = Coefficients.from_complex("1+2i", "-1+2i")

ADMISSIBLE = [
    (HIROTA, SolutionSpec(family=Family.SOLITARY1, c=1, theta=0.3, Theta=0.5)),
    (HIROTA, SolutionSpec(family=Family.SOLITARY2, c=1, theta=0.3, phi=0.2)),
    (REAL_SUM, SolutionSpec(family=Family.SOLITARY3, c=1.5, Theta=0.4)),
    (REAL_SUM, SolutionSpec(family=Family.SOLITARY4, c=1.5)),
    (REAL_SUM, SolutionSpec(family=Family.SECH, c=2, phi=0.7, xi0=1)),
    (AIRY, SolutionSpec(family=Family.CUSP, c=1, Theta=0.5)),
    (NEGATIVE_SUM, SolutionSpec(family=Family.KINK1, c=-1)),
    (NEGATIVE_HIROTA, SolutionSpec(family=Family.KINK2, c=-1, Theta=1)),
    (HIROTA, SolutionSpec(family=Family.LP_SOLITON, c=1, k=0.5)),
    (NEGATIVE_HIROTA, SolutionSpec(family=Family.LP_KINK, c=-2, k=0.5)),
    (PEAKON, SolutionSpec(family=Family.PEAKON, c=-1, A=1.5)),
]


@pytest.mark.parametrize("coeffs, spec", ADMISSIBLE, ids=[spec.family.value for _, spec in ADMISSIBLE])
def test_residual_vanishes(coeffs, spec):
    assert closed_form.validate(spec, coeffs) == []
    t = 0.3
    x = residual_nodes(center=spec.c * t + spec.xi0)
    residual = closed_form.pde_residual(spec, coeffs, t, x)
    scale = max(1.0, float(np.max(np.abs(closed_form.evaluate(spec, coeffs, t, x)))))
    assert np.max(np.abs(residual)) < RESIDUAL_TOLERANCE * scale


def test_solitary3_reduces_to_sech():
    x = np.linspace(-10, 10, 201)
    sech = closed_form.evaluate(SolutionSpec(family=Family.SECH, c=1.5, phi=0.4), REAL_SUM, 0.2, x)
    solitary = closed_form.evaluate(SolutionSpec(family=Family.SOLITARY3, c=1.5, phi=0.4), REAL_SUM, 0.2, x)
    np.testing.assert_allclose(solitary, sech, rtol=0, atol=1e-14)


def test_sech_amplitude():
    spec = SolutionSpec(family=Family.SECH, c=2)
    assert closed_form.evaluate(spec, REAL_SUM, 0.0, 0.0) == pytest.approx(2.0)


def test_time_derivative_of_travelling_wave():
    spec = SolutionSpec(family=Family.SECH, c=2, phi=0.7)
    x = np.linspace(-5, 5, 11)
    jets = closed_form.jets(spec, REAL_SUM, 0.1, x, order=1)
    np.testing.assert_allclose(closed_form.time_derivative(spec, REAL_SUM, 0.1, x), -2 * jets[1], atol=1e-12)


def test_peakon_one_sided_residuals():
    spec = SolutionSpec(family=Family.PEAKON, c=-1)
    x = residual_nodes()
    for side in (1, -1):
        residual = closed_form.pde_residual(spec, PEAKON, 0.0, x, side=side)
        assert np.max(np.abs(residual)) < RESIDUAL_TOLERANCE * 1e4


def test_jet_at_cusp():
    spec = SolutionSpec(family=Family.PEAKON, c=-1)
    with pytest.raises(JetAtCusp):
        closed_form.jets(spec, PEAKON, 0.0, 0.0)
    right = closed_form.jets(spec, PEAKON, 0.0, 0.0, order=1, side=1)
    left = closed_form.jets(spec, PEAKON, 0.0, 0.0, order=1, side=-1)
    assert right[0] == pytest.approx(left[0])
    assert abs(right[1]) == pytest.approx(abs(left[1]))
    assert right[1] != pytest.approx(left[1])


def test_cusp_value_from_the_right():
    spec = SolutionSpec(family=Family.CUSP, c=1, Theta=0.5)
    assert closed_form.evaluate(spec, AIRY, 0.0, 0.0) == pytest.approx(math.sinh(0.5) + 1)


def test_kink2_limits():
    spec = SolutionSpec(family=Family.KINK2, c=-1, Theta=1, phi=0.3)
    limits = closed_form.asymptotics(spec, NEGATIVE_HIROTA)
    far = closed_form.evaluate(spec, NEGATIVE_HIROTA, 0.0, np.array([-40.0, 40.0]))
    assert far[0] == pytest.approx(limits.u_minus, abs=1e-12)
    assert far[1] == pytest.approx(limits.u_plus, abs=1e-12)
    # phase offsets from the rotation angle have tangent +-sinh(Theta) / sqrt(3)
    minus, plus = limits.phase_offsets(0.3)
    assert math.tan(plus) == pytest.approx(math.sinh(1) / math.sqrt(3))
    assert math.tan(minus) == pytest.approx(-math.sinh(1) / math.sqrt(3))


def test_kink1_limits():
    spec = SolutionSpec(family=Family.KINK1, c=-1)
    limits = closed_form.asymptotics(spec, NEGATIVE_SUM)
    assert limits.u_plus == pytest.approx(-limits.u_minus)
    assert limits.modulus[1] == pytest.approx(1.0)
    assert limits.decay_rate == pytest.approx(math.sqrt(2))


def test_lp_kink_phase_does_not_converge():
    spec = SolutionSpec(family=Family.LP_KINK, c=-2, k=0.5)
    assert not closed_form.asymptotics(spec, NEGATIVE_HIROTA).phase_converges


def test_validate_lists_violations():
    assert closed_form.validate(SolutionSpec(family=Family.SECH, c=-1), HIROTA) == ["c>0 violated"]
    violations = closed_form.validate(SolutionSpec(family=Family.KINK2, c=1), HIROTA)
    assert violations == ["alpha<0 violated", "c<0 violated"]
    assert closed_form.validate(SolutionSpec(family=Family.PEAKON, c=1), PEAKON) == [
        "c>0, sigma^2>3 or c<0, sigma^2<3 violated"
    ]
    assert closed_form.validate(SolutionSpec(family=Family.PEAKON, c=-1), AIRY) == [
        "sigma defined and non-zero violated"
    ]


def test_invalid_solution():
    with pytest.raises(InvalidSolution):
        closed_form.evaluate(SolutionSpec(family=Family.CUSP, c=1), HIROTA, 0.0, 1.0)


def test_linear_phase_frequency():
    assert closed_form.linear_phase_frequency(1, 0.5) == pytest.approx(-2.5)


def test_evaluate_jet_point():
    spec = SolutionSpec(family=Family.SECH, c=2)
    point = closed_form.evaluate_jet(spec, REAL_SUM, 0.0, 0.5, order=2)
    jets = closed_form.jets(spec, REAL_SUM, 0.0, 0.5, order=2)
    assert point.order == 2
    assert point.values[0:6:2] == pytest.approx(tuple(jets.real))
    assert point.values[1:6:2] == pytest.approx(tuple(jets.imag))


def test_sample_grid():
    grid = Grid(half_width=20, points=256)
    spec = SolutionSpec(family=Family.SECH, c=1)
    state = closed_form.sample_grid(spec, REAL_SUM, grid, t=0.5)
    assert state.spec == spec
    assert state.t == 0.5
    np.testing.assert_allclose(state.samples, closed_form.evaluate(spec, REAL_SUM, 0.5, grid.x))
