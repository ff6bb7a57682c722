"""Testing spectral evolution behavior"""

import numpy as np
import pytest

from cmkdv.errors import NonPeriodicInput, StabilityBoundViolated
from cmkdv.method import (
    Evolution,
    closed_form,
    drift_report,
    evolve,
    galilean_balance,
    pde_pointwise_residual,
    self_convergence,
    stability_bound,
    wave_error,
)
from cmkdv.method.conservation import analytic_quantity, center_of_momentum, quantity_quadrature
from cmkdv.method.evolution import check_periodic
from cmkdv.method.spectral import dealias_mask, spectral_derivative, tail_ratio
from cmkdv.models import Coefficients, Family, Grid, GridState, SolutionSpec, SolverOptions

LINEAR = Coefficients()
HIROTA = Coefficients.from_complex(1, 0)
COV_MASS = Coefficients.from_complex(2, 1)
LP_SOLITON = SolutionSpec(family=Family.LP_SOLITON, c=1, k=0.5)


@pytest.fixture
def periodic_grid():
    return Grid(half_width=np.pi, points=64)


@pytest.fixture
def gaussian():
    grid = Grid(half_width=40, points=256)
    return GridState(grid=grid, samples=np.exp(-(grid.x**2) / 4) * (1 + 0.5j))


def test_spectral_derivative(periodic_grid):
    x = periodic_grid.x
    np.testing.assert_allclose(spectral_derivative(np.sin(3 * x), periodic_grid), 3 * np.cos(3 * x), atol=1e-12)
    np.testing.assert_allclose(spectral_derivative(np.exp(2j * x), periodic_grid, 3), -8j * np.exp(2j * x), atol=1e-10)


def test_dealias_mask(periodic_grid):
    mask = dealias_mask(periodic_grid)
    assert mask[0] and mask[21]
    assert not mask[22] and not mask[32]


def test_airy_single_mode(periodic_grid):
    x = periodic_grid.x
    initial = GridState(grid=periodic_grid, samples=np.exp(3j * x))
    trajectory = evolve(initial, LINEAR, SolverOptions(dt=1e-3, t_end=1.0))
    np.testing.assert_allclose(trajectory.final.samples, np.exp(1j * (3 * x + 27 * 1.0)), atol=1e-10)


def test_nonlinear_plane_wave(periodic_grid):
    # a exp(i(kx - wt)) with w = k |a|^2 (alpha - beta) - k^3
    x, k, a = periodic_grid.x, 3, 0.5
    initial = GridState(grid=periodic_grid, samples=a * np.exp(1j * k * x))
    trajectory = evolve(initial, HIROTA, SolverOptions(dt=1e-3, t_end=1.0, record_every=250))
    w = k * a**2 - k**3
    np.testing.assert_allclose(trajectory.final.samples, a * np.exp(1j * (k * x - w)), atol=1e-10)
    assert trajectory.times == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])


def test_wave_error():
    grid = Grid(half_width=40, points=1024)
    spec = SolutionSpec(family=Family.SECH, c=1)
    state = closed_form.sample_grid(spec, COV_MASS, grid)
    linf, l2 = wave_error(spec, COV_MASS, state)
    assert linf == 0 and l2 == 0
    linf, _ = wave_error(spec.with_params(c=2), COV_MASS, state)
    assert linf > 0.1


def test_pointwise_residual():
    spec = SolutionSpec(family=Family.SECH, c=1)
    residual = pde_pointwise_residual(spec, COV_MASS, 0.5, np.linspace(-5, 5, 21))
    assert np.max(np.abs(residual)) < 1e-10


def test_non_periodic_input():
    grid = Grid(half_width=20, points=256)
    with pytest.raises(NonPeriodicInput):
        check_periodic(GridState(grid=grid, samples=np.tanh(grid.x)))
    kink = closed_form.sample_grid(SolutionSpec(family=Family.KINK2, c=-1), Coefficients.from_complex(-1, 0), grid)
    with pytest.raises(NonPeriodicInput):
        evolve(kink, Coefficients.from_complex(-1, 0), SolverOptions())


def test_periodic_input(gaussian):
    assert check_periodic(gaussian) == tail_ratio(gaussian.samples)
    assert tail_ratio(gaussian.samples) < 1e-10


def test_stability_bound(gaussian):
    assert stability_bound(gaussian, LINEAR) == np.inf
    strong = gaussian.model_copy(update={"samples": 10 * gaussian.samples})
    bound = stability_bound(strong, HIROTA)
    assert bound == pytest.approx(gaussian.grid.spacing / 125)
    with pytest.raises(StabilityBoundViolated):
        evolve(strong, HIROTA, SolverOptions(dt=0.1, t_end=1.0))


def test_phase_rotation_equivariance(gaussian):
    options = SolverOptions(dt=1e-2, t_end=0.5)
    rotation = np.exp(0.7j)
    rotated = gaussian.model_copy(update={"samples": rotation * gaussian.samples})
    plain = evolve(gaussian, COV_MASS, options).final.samples
    turned = evolve(rotated, COV_MASS, options).final.samples
    np.testing.assert_allclose(turned, rotation * plain, atol=1e-12)


def test_airy_mass_drift(gaussian):
    trajectory = evolve(gaussian, LINEAR, SolverOptions(dt=1e-2, t_end=0.5, record_every=10))
    assert drift_report(trajectory, ["Mtilde", "P"], LINEAR)["Mtilde"] < 1e-12


def test_evolution_runner(gaussian):
    runner = Evolution(coefficients=COV_MASS, verbose=False)
    trajectory = runner.calculate(gaussian, SolverOptions(dt=1e-2, t_end=0.1, record_every=5))
    assert len(trajectory.states) == 3
    assert set(runner.drift(trajectory, ["P", "E"])) == {"P", "E"}


@pytest.mark.slow
@pytest.mark.parametrize(
    "coeffs, spec, tolerance",
    [
        (COV_MASS, SolutionSpec(family=Family.SECH, c=1, phi=0.3), 1e-9),
        (HIROTA, LP_SOLITON, 1e-7),
    ],
    ids=["Sech", "LPSoliton"],
)
def test_soliton_evolution(coeffs, spec, tolerance):
    grid = Grid(half_width=40, points=1024)
    initial = closed_form.sample_grid(spec, coeffs, grid)
    trajectory = evolve(initial, coeffs, SolverOptions(dt=1e-3, t_end=5.0, record_every=1000))
    linf, _ = wave_error(spec, coeffs, trajectory.final)
    assert linf < 1e-6
    drift = drift_report(trajectory, ["P", "E"], coeffs)
    assert drift["P"] < tolerance and drift["E"] < tolerance


@pytest.mark.slow
def test_soliton_moves_as_free_particle():
    initial = closed_form.sample_grid(LP_SOLITON, HIROTA, Grid(half_width=40, points=1024))
    trajectory = evolve(initial, HIROTA, SolverOptions(dt=1e-3, t_end=3.0, record_every=500))
    times = np.array(trajectory.times)
    np.testing.assert_allclose(center_of_momentum(trajectory.states), LP_SOLITON.c * times, atol=1e-5)
    momentum = quantity_quadrature("P", trajectory.final, HIROTA)
    energy = quantity_quadrature("E", trajectory.final, HIROTA)
    assert momentum == pytest.approx(analytic_quantity("P", LP_SOLITON, HIROTA), rel=1e-7)
    assert energy == pytest.approx(analytic_quantity("E", LP_SOLITON, HIROTA), rel=1e-7)
    assert energy == pytest.approx(LP_SOLITON.c * momentum / 2, rel=1e-7)


@pytest.mark.slow
def test_galilean_balance():
    grid = Grid(half_width=40, points=1024)
    spec = SolutionSpec(family=Family.SECH, c=1, xi0=-2)
    initial = closed_form.sample_grid(spec, COV_MASS, grid)
    trajectory = evolve(initial, COV_MASS, SolverOptions(dt=1e-3, t_end=1.0, record_every=100))
    balance = galilean_balance(trajectory, COV_MASS)
    np.testing.assert_allclose(balance, balance[0], atol=1e-8)


@pytest.mark.slow
def test_self_convergence():
    grid = Grid(half_width=40, points=512)
    spec = SolutionSpec(family=Family.SECH, c=1)
    sampled = closed_form.sample_grid(spec, COV_MASS, grid)
    initial = GridState(grid=grid, samples=sampled.samples)
    report = self_convergence(initial, COV_MASS, SolverOptions(dt=1e-2, t_end=0.5), levels=3)
    assert len(report.errors) == 3
    assert report.dts == pytest.approx([1e-2, 5e-3, 2.5e-3])
    assert report.ratios[0] == pytest.approx(16, rel=0.3)
