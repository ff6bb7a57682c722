"""Testing conservation laws behavior"""

import math
from fractions import Fraction

import numpy as np
import pytest

from cmkdv.errors import NonFiniteDensity, NotConserved, NotTabulated, NotVariational, ZeroMomentum
from cmkdv.jet import ComplexJetPoly, JetPoly, total_t_derivative, total_x_derivative
from cmkdv.method import QuantityTable, Scope, SymbolicVerification, TableOne, closed_form
from cmkdv.method.conservation import (
    ENTRY_IDS,
    QuantityId,
    analytic_quantity,
    analytic_quantity_variants,
    catalog,
    cell,
    center_of_momentum,
    conservation_residual,
    determining_residual,
    drift,
    entry,
    flux_from_density,
    helmholtz_residuals,
    homotopy_density,
    is_variational,
    quantity_quadrature,
    variational_link,
    window_quantity,
)
from cmkdv.method.conservation.table import shrinks
from cmkdv.models import Coefficients, Family, Grid, GridState, SolutionSpec

HIROTA = Coefficients.from_complex(1, 0)
SASA_SATSUMA = Coefficients.from_complex(3, 1)
COV_MASS = Coefficients.from_complex(2, 1)
COMPLEX = Coefficients.from_complex("1+i", "2+i")

GRID = Grid(half_width=40, points=1024)


@pytest.fixture
def sech_state():
    spec = SolutionSpec(family=Family.SECH, c=1, phi=0.4)
    return closed_form.sample_grid(spec, COV_MASS, GRID)


@pytest.mark.parametrize("coeffs", [HIROTA, SASA_SATSUMA, COV_MASS, COMPLEX], ids=str)
def test_admitted_catalog_holds(coeffs):
    reports = SymbolicVerification(coefficients=coeffs, verbose=False).calculate()
    assert len(reports) == len(ENTRY_IDS)
    failed = [report.id for report in reports if not report.passed]
    assert failed == []


def test_scopes():
    runner = SymbolicVerification(coefficients=HIROTA, verbose=False)
    assert [report.id for report in runner.calculate(Scope.HIGHER)] == ["H1", "H2", "H3", "M9", "M10", "M11"]
    assert all(report.kind.value == "multiplier" for report in runner.calculate("multipliers"))


def test_skipped_entries():
    reports = {report.id: report for report in SymbolicVerification(coefficients=HIROTA, verbose=False).calculate()}
    assert reports["T4"].skipped and reports["H3"].skipped
    assert not reports["T8"].skipped
    assert "helmholtz dQ1/du2" in reports["M6"].checks


def test_catalog_filters_cases():
    ids = [item.id for item in catalog(COMPLEX)]
    assert ids == ["T1", "M3"]
    assert len(catalog(COMPLEX, admitted_only=False)) == len(ENTRY_IDS)


def test_unknown_entry():
    with pytest.raises(KeyError):
        entry("T9", HIROTA)


def test_momentum_conservation_residual():
    assert conservation_residual(entry("T1", COMPLEX)).is_zero
    assert not conservation_residual(entry("T1", COMPLEX), Coefficients.from_complex("1+i", 2)).is_zero


def test_mass_not_conserved_outside_case():
    with pytest.raises(NotConserved):
        flux_from_density(entry("T4", HIROTA).body, HIROTA)


@pytest.mark.parametrize("entry_id", ["M3", "M8", "M6", "M7", "M9", "M10"])
def test_hirota_multipliers(entry_id):
    q = entry(entry_id, HIROTA).body
    assert determining_residual(q, HIROTA).is_zero
    assert is_variational(q)


def test_multiplier_fails_outside_case():
    assert not determining_residual(entry("M1", COV_MASS).body, HIROTA).is_zero


def test_non_variational_multiplier():
    q = ComplexJetPoly.u(1)
    assert not is_variational(q)
    assert any(not residual.is_zero for residual in helmholtz_residuals(q).values())
    with pytest.raises(NotVariational):
        homotopy_density(q)


def test_helmholtz_components():
    # Q = |u|^2 u_x, so Q1 = (u1^2 + u2^2) u1_x and Q2 = (u1^2 + u2^2) u2_x
    u1, u2 = JetPoly.jet(1), JetPoly.jet(2)
    u1_x, u2_x = JetPoly.jet(1, 1), JetPoly.jet(2, 1)
    q = ComplexJetPoly.u() * ComplexJetPoly.ubar() * ComplexJetPoly.u(1)
    residuals = helmholtz_residuals(q)
    assert residuals["dQ1/du1"] == 2 * u1 * u1_x + 2 * u2 * u2_x
    assert residuals["dQ2/du2"] == 2 * u1 * u1_x + 2 * u2 * u2_x
    assert residuals["dQ1/du2"] == 2 * u2 * u1_x - 2 * u1 * u2_x
    assert residuals["dQ2/du1"] == 2 * u1 * u2_x - 2 * u2 * u1_x
    assert residuals["dQ1/du1_x"] == 2 * (u1**2 + u2**2)
    assert residuals["dQ2/du2_x"] == 2 * (u1**2 + u2**2)
    assert residuals["dQ1/du2_x"].is_zero and residuals["dQ2/du1_x"].is_zero
    assert all(residuals[f"dQ{a}/du{b}_xx"].is_zero for a in (1, 2) for b in (1, 2))


def test_hirota_energy_multiplier_components():
    q = entry("M7", HIROTA).body
    u1, u2 = JetPoly.jet(1), JetPoly.jet(2)
    assert q.re == 3 * JetPoly.jet(1, 2) + (u1**2 + u2**2) * u1
    # symmetric Jacobian of the zeroth-order part and equal second-order coefficients
    assert q.re.partial(2, 0) == q.im.partial(1, 0) == 2 * u1 * u2
    assert q.re.partial(1, 2) == q.im.partial(2, 2) == 3
    assert all(residual.is_zero for residual in helmholtz_residuals(q).values())


@pytest.mark.parametrize("density, multiplier, factor", [("T1", "M3", 2), ("T2", "M7", 2), ("T8", "M6", 4)])
def test_links(density, multiplier, factor):
    linked = variational_link(entry(density, HIROTA).body)
    assert linked == factor * entry(multiplier, HIROTA).body


def test_homotopy_round_trip():
    q = entry("M3", HIROTA).body
    density = homotopy_density(q, improved=False)
    assert density == Fraction(1, 2) * entry("T1", HIROTA).body
    assert variational_link(density) == q


def test_improved_homotopy_lowers_order():
    q = entry("M7", HIROTA).body
    basic = homotopy_density(q, improved=False)
    improved = homotopy_density(q, improved=True)
    assert improved.order < basic.order
    assert variational_link(improved) == q


@pytest.mark.parametrize("entry_id, coeffs", [("H1", HIROTA), ("H2", HIROTA), ("H3", SASA_SATSUMA)])
def test_reconstructed_flux(entry_id, coeffs):
    density = entry(entry_id, coeffs).body
    flux = flux_from_density(density, coeffs)
    assert (total_t_derivative(density, coeffs) + total_x_derivative(flux)).is_zero


def test_sech_quantities(sech_state):
    spec = sech_state.spec
    assert quantity_quadrature("P", sech_state, COV_MASS) == pytest.approx(4.0, rel=1e-10)
    assert analytic_quantity(QuantityId.MOMENTUM, spec, COV_MASS) == pytest.approx(4.0)
    assert quantity_quadrature("E", sech_state, COV_MASS) == pytest.approx(2.0, rel=1e-10)
    mass = quantity_quadrature(QuantityId.COV_MASS, sech_state, COV_MASS)
    assert mass == pytest.approx(2 * math.pi * complex(math.cos(0.4), math.sin(0.4)) / math.sqrt(2), rel=1e-10)
    assert quantity_quadrature("W", sech_state, COV_MASS) == pytest.approx(0.0, abs=1e-10)


def test_galilean_value():
    spec = SolutionSpec(family=Family.SECH, c=1, xi0=2)
    state = closed_form.sample_grid(spec, COV_MASS, GRID)
    assert quantity_quadrature("G", state, COV_MASS) == pytest.approx(-4.0, rel=1e-10)
    assert analytic_quantity("G", spec, COV_MASS) == pytest.approx(-4.0)


def test_lp_soliton_twist_variants():
    spec = SolutionSpec(family=Family.LP_SOLITON, c=1, k=0.5)
    state = closed_form.sample_grid(spec, HIROTA, GRID)
    variants = analytic_quantity_variants("W", spec, HIROTA)
    assert set(variants) == {"displayed", "linear_phase_rate"}
    # the twist density integrates to twice the tabulated rate
    assert quantity_quadrature("W", state, HIROTA) == pytest.approx(2 * variants["linear_phase_rate"], rel=1e-8)


@pytest.mark.parametrize("Theta", [-1.0, 0.5, 1.0, 2.0])
def test_kink2_twist_ratio(Theta):
    coeffs = Coefficients.from_complex(-1, 0)
    spec = SolutionSpec(family=Family.KINK2, c=-1, Theta=Theta)
    narrow = window_quantity("W", spec, coeffs, 60.0, 1 / 64)
    wide = window_quantity("W", spec, coeffs, 80.0, 1 / 64)
    assert wide == pytest.approx(narrow, abs=1e-8)
    assert wide / analytic_quantity("W", spec, coeffs) == pytest.approx(2.0, rel=1e-8)


def test_kink1_twist_vanishes():
    coeffs = Coefficients.from_complex(-2, -1)
    spec = SolutionSpec(family=Family.KINK1, c=-1)
    assert window_quantity("W", spec, coeffs, 40.0, 1 / 64) == pytest.approx(0.0, abs=1e-8)


def test_peakon_momentum():
    coeffs = Coefficients.from_complex("1+2i", "-1+2i")
    spec = SolutionSpec(family=Family.PEAKON, c=-1)
    variants = analytic_quantity_variants("P", spec, coeffs)
    assert variants["displayed"] == pytest.approx(variants["amplitude"])
    assert window_quantity("P", spec, coeffs, 64.0, 1 / 256) == pytest.approx(variants["amplitude"], rel=1e-4)


def test_not_tabulated():
    spec = SolutionSpec(family=Family.SOLITARY4, c=1)
    with pytest.raises(NotTabulated):
        analytic_quantity("P", spec, COV_MASS)


def test_sech_covariant_forms_follow_case():
    spec = SolutionSpec(family=Family.SECH, c=1, phi=0.4)
    state = closed_form.sample_grid(spec, SASA_SATSUMA, GRID)
    rotation = complex(math.cos(0.8), math.sin(0.8))
    assert analytic_quantity("Ptilde", spec, SASA_SATSUMA) == pytest.approx(3 * rotation)
    assert quantity_quadrature("Ptilde", state, SASA_SATSUMA) == pytest.approx(3 * rotation, rel=1e-10)
    with pytest.raises(NotTabulated):
        analytic_quantity("Mtilde", spec, SASA_SATSUMA)
    with pytest.raises(NotTabulated):
        analytic_quantity("Ptilde", spec, COV_MASS)
    rows = QuantityTable(coefficients=SASA_SATSUMA, verbose=False).calculate(state).set_index("quantity")
    assert rows.loc["Mtilde", "status"] == "not_admitted"
    assert rows.loc["Ptilde", "ratio"] == pytest.approx(1.0, rel=1e-10)


def test_non_finite_density():
    spec = SolutionSpec(family=Family.SOLITARY4, c=1)
    with pytest.raises(NonFiniteDensity):
        window_quantity("P", spec, COV_MASS, 32.0, 1 / 64)


def test_center_of_momentum():
    samples = np.exp(-((GRID.x - 3.0) ** 2))
    state = GridState(grid=GRID, samples=samples)
    assert center_of_momentum([state])[0] == pytest.approx(3.0)
    with pytest.raises(ZeroMomentum):
        center_of_momentum([GridState(grid=GRID, samples=np.zeros(GRID.points))])


def test_drift():
    assert drift([2.0, 2.5, 1.0]) == pytest.approx(0.5)
    assert drift([0.0, 1e-3]) == pytest.approx(1e-3)


def test_quantity_table(sech_state):
    frame = QuantityTable(coefficients=COV_MASS, verbose=False).calculate(sech_state)
    rows = frame.set_index("quantity")
    assert rows.loc["P", "ratio"] == pytest.approx(1.0, rel=1e-10)
    assert rows.loc["P", "status"] == "ok"
    assert rows.loc["Ptilde", "status"] == "not_admitted"


@pytest.mark.parametrize(
    "family, quantity",
    [
        (Family.SOLITARY3, QuantityId.MOMENTUM),
        (Family.SOLITARY4, QuantityId.MOMENTUM),
        (Family.PEAKON, QuantityId.MOMENTUM),
        (Family.SOLITARY1, QuantityId.TWIST),
        (Family.SOLITARY2, QuantityId.TWIST),
        (Family.SOLITARY2, QuantityId.MOMENTUM),
    ],
)
def test_table_cells(family, quantity):
    result = cell(family, quantity)
    assert result.matches


def test_algebraic_twist_is_finite():
    # the rational wave tends to a non-zero constant; its twist density decays like x^-3
    for verdict in cell(Family.SOLITARY2, QuantityId.TWIST).trials:
        assert verdict.admitted and verdict.finite and verdict.conserved
        assert verdict.value == pytest.approx(0.0, abs=1e-6)
    assert not any(verdict.finite for verdict in cell(Family.SOLITARY2, QuantityId.MOMENTUM).trials)


def test_shrinks():
    assert shrinks([1.0, 0.25, 0.0625])
    assert shrinks([3.0, 3.0, 1e-9])
    assert not shrinks([1.0, 1.0, 1.0])
    assert not shrinks([1.0, 2.0, 4.0])


def test_peakon_momentum_trials():
    verdicts = [trial.verdict for trial in cell(Family.PEAKON, QuantityId.MOMENTUM).trials]
    assert verdicts == [True, False]


@pytest.mark.slow
def test_table_one():
    frame = TableOne(verbose=False).calculate()
    assert len(frame) == 36
    assert frame["matches"].all()
