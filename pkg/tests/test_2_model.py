"""Testing equation model behavior"""

from fractions import Fraction

import numpy as np
import pandas as pd
import pandera as pa
import pytest
from pydantic import ValidationError

from cmkdv.errors import InvalidCoefficients, SigmaUndefined
from cmkdv.jet import ComplexJetPoly, JetPoly
from cmkdv.method.equation import CASE_PREDICATES, classify, classify_report, normalize, pde_rhs, rescale, sigma
from cmkdv.models import Coefficients, Family, Grid, GridState, SampleSchema, SolutionSpec, SolverOptions


@pytest.fixture
def hirota():
    return Coefficients.from_complex(1, 0)


@pytest.fixture
def sasa_satsuma():
    return Coefficients.from_complex(3, 1)


@pytest.fixture
def peakon_coeffs():
    return Coefficients.from_complex("1+2i", "-1+2i")


def test_exact_parsing():
    coeffs = Coefficients(alpha1=0.1, alpha2="1/3", beta1="2.5", beta2=-2)
    assert coeffs.alpha1 == Fraction(1, 10)
    assert coeffs.alpha2 == Fraction(1, 3)
    assert coeffs.beta1 == Fraction(5, 2)
    assert coeffs.beta2 == Fraction(-2)


def test_complex_parsing():
    coeffs = Coefficients.from_complex("1+2i", "-i")
    assert coeffs.alpha == (1, 2)
    assert coeffs.beta == (0, -1)
    assert coeffs.alpha_value == complex(1, 2)


def test_coefficients_text(peakon_coeffs):
    assert str(peakon_coeffs) == "alpha=1+2i, beta=-1+2i"
    assert str(Coefficients(alpha1="1/2", beta2=-3)) == "alpha=1/2, beta=0-3i"


def test_hirota_flags(hirota):
    flags = classify(hirota)
    assert flags.hirota and flags.twist_ok and flags.momentum_ok and flags.energy_ok
    assert not flags.covmass_ok and not flags.sasa_satsuma


def test_sasa_satsuma_flags(sasa_satsuma):
    flags = classify(sasa_satsuma)
    assert flags.sasa_satsuma and flags.covmom_ok and flags.energy_ok
    assert not flags.hirota


def test_covmass_predicate_binds():
    assert classify(Coefficients.from_complex(2, 1)).covmass_ok


def test_complex_alpha_flags():
    flags = classify(Coefficients.from_complex("1+i", 0))
    assert not flags.momentum_ok and not flags.energy_ok and not flags.twist_ok
    assert not flags.sech_case


def test_airy_degenerate():
    flags = classify(Coefficients.from_complex(1, -1))
    assert flags.airy_degenerate and flags.sech_case
    assert not flags.peakon_case


def test_zero_coefficients_admit_everything_linear():
    flags = classify(Coefficients())
    assert flags.covmass_ok and flags.covmom_ok and flags.momentum_ok and flags.airy_degenerate


def test_sigma(peakon_coeffs):
    assert sigma(peakon_coeffs).value == Fraction(1, 2)
    assert classify(peakon_coeffs).peakon_case


def test_sigma_one_zero_denominator():
    # alpha + beta real, so sigma comes from the second quotient
    coeffs = Coefficients.from_complex("1+i", "1-i")
    assert sigma(coeffs).value == Fraction(-1)


def test_sigma_undefined():
    with pytest.raises(SigmaUndefined):
        sigma(Coefficients.from_complex(1, -1))
    with pytest.raises(SigmaUndefined):
        sigma(Coefficients.from_complex(2, 1))


def test_classify_report(hirota):
    report = classify_report(hirota)
    assert set(report) == set(CASE_PREDICATES)
    assert report["hirota"] == {"value": True, "predicate": CASE_PREDICATES["hirota"]}


def test_normalize():
    coeffs, scale = normalize("2", "1", 4)
    assert coeffs == Coefficients.from_complex(2, 1)
    assert scale.x_scale == pytest.approx(2.0)
    with pytest.raises(InvalidCoefficients):
        normalize(1, 0, -1)
    with pytest.raises(InvalidCoefficients):
        normalize(1, 0, "1+i")


def test_pde_rhs_linear_part():
    re_rhs, im_rhs = pde_rhs(Coefficients())
    assert re_rhs == -JetPoly.jet(1, 3)
    assert im_rhs == -JetPoly.jet(2, 3)


def test_pde_rhs_matches_complex_form(hirota):
    u, ux = ComplexJetPoly.u(), ComplexJetPoly.u(1)
    expected = -(u.conj() * u * ux + ComplexJetPoly.u(3))
    assert pde_rhs(hirota) == (expected.re, expected.im)


def test_rescale():
    spec = SolutionSpec(family=Family.LP_SOLITON, c=4.0, k=2.0, xi0=1.0)
    scaled = rescale(spec, 2.0)
    assert scaled.c == pytest.approx(1.0)
    assert scaled.k == pytest.approx(1.0)
    assert scaled.xi0 == pytest.approx(2.0)


def test_spec_validation():
    assert SolutionSpec(family="lpsoliton", c=1).family is Family.LP_SOLITON
    with pytest.raises(ValidationError):
        SolutionSpec(family=Family.PEAKON, c=-1, A=0)
    with pytest.raises(ValidationError):
        SolutionSpec(family="Soliton", c=1)


def test_grid():
    grid = Grid(half_width=40, points=1024)
    assert grid.spacing == pytest.approx(80 / 1024)
    assert grid.x[0] == pytest.approx(-40)
    assert grid.x[-1] == pytest.approx(40 - grid.spacing)
    with pytest.raises(ValidationError):
        Grid(points=1000)
    with pytest.raises(ValidationError):
        Grid(points=8)


def test_solver_options():
    assert SolverOptions(dt=1e-3, t_end=5).steps == 5000
    with pytest.raises(ValidationError):
        SolverOptions(dt=0)


def test_grid_state_frame(tmp_path):
    grid = Grid(half_width=10, points=64)
    state = GridState(grid=grid, samples=np.exp(-(grid.x**2)) * (1 - 2j))
    frame = state.to_frame()
    assert list(frame.columns) == ["x", "re_u", "im_u", "abs_u", "arg_u"]
    np.testing.assert_allclose(frame["abs_u"], np.sqrt(5) * np.exp(-(grid.x**2)))
    path = state.write_csv(tmp_path / "state.csv")
    assert len(pd.read_csv(path)) == 64


def test_sample_schema_rejects_wrong_modulus():
    frame = pd.DataFrame({"x": [0.0, 1.0], "re_u": [3.0, 1.0], "im_u": [4.0, 0.0], "abs_u": [5.0, 2.0], "arg_u": 0.0})
    with pytest.raises(pa.errors.SchemaError):
        SampleSchema.validate(frame)
