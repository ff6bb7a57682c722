"""
Pseudospectral time integration of u_t + alpha conj(u) u u_x + beta u^2 conj(u)_x + u_xxx = 0 on a periodic grid.

The dispersive term is integrated exactly by per-mode phase factors, the nonlinear term by the classical
four-stage Runge-Kutta scheme in the interaction picture (IF-RK4).
"""
from typing import Iterable

import matplotlib.pyplot as plt
import numpy as np
from loguru import logger
from matplotlib.gridspec import GridSpec
from pydantic import BaseModel, ConfigDict
from scipy import fft
from tqdm import tqdm

from ..errors import InstabilityError, NonPeriodicInput, StabilityBoundViolated
from ..models import Coefficients, GridState, SolutionSpec, SolverOptions, Trajectory
from . import closed_form
from .base_method import BaseMethod
from .conservation import QuantityId, center_of_momentum, drift, quantity_quadrature
from .spectral import dealias_mask, derivative_symbol, tail_ratio

NONLINEAR_CFL = 1.0
INSTABILITY_FACTOR = 1e3
PERIODICITY_TOLERANCE = 1e-10


class _Stepper:
    # Fourier-space right-hand side and integrating factors for one grid and step
    def __init__(self, grid, coeffs: Coefficients, options: SolverOptions):
        self.alpha = coeffs.alpha_value
        self.beta = coeffs.beta_value
        self.first = derivative_symbol(grid, 1)
        self.mask = dealias_mask(grid) if options.dealias else None
        # u_t = -u_xxx becomes d/dt u_hat = i k^3 u_hat
        linear = -derivative_symbol(grid, 3)
        self.half = np.exp(linear * options.dt / 2)
        self.full = self.half**2
        self.dt = options.dt

    def nonlinear(self, transform: np.ndarray) -> np.ndarray:
        u = fft.ifft(transform)
        ux = fft.ifft(self.first * transform)
        term = fft.fft(-(self.alpha * np.conj(u) * u * ux + self.beta * u**2 * np.conj(ux)))
        if self.mask is not None:
            term = term * self.mask
        return term

    def step(self, transform: np.ndarray) -> np.ndarray:
        dt, half, full = self.dt, self.half, self.full
        a = dt * self.nonlinear(transform)
        b = dt * self.nonlinear(half * (transform + a / 2))
        c = dt * self.nonlinear(half * transform + b / 2)
        d = dt * self.nonlinear(full * transform + half * c)
        return full * transform + (full * a + 2 * half * (b + c) + d) / 6


def stability_bound(state: GridState, coeffs: Coefficients) -> float:
    """
    Largest admissible step h / ((|alpha| + |beta|) max |u|^2) times ``NONLINEAR_CFL``; infinite for the linear
    equation or zero data.
    """
    strength = (abs(coeffs.alpha_value) + abs(coeffs.beta_value)) * float(np.max(np.abs(state.samples))) ** 2
    if strength == 0:
        return np.inf
    return NONLINEAR_CFL * state.grid.spacing / strength


def check_periodic(state: GridState) -> float:
    """
    Spectral tail ratio of the samples.

    Raises
    ------
    NonPeriodicInput
        If the samples come from a kink or a cusped wave, or if more than ``PERIODICITY_TOLERANCE`` of their
        spectral energy sits in the upper half of the modes, which is what a jump across the boundary produces.
    """
    spec = state.spec
    if spec is not None and (spec.family.is_kink or spec.family.has_cusp):
        raise NonPeriodicInput(f"{spec.family.value} data are not smooth and periodic on the grid")
    ratio = tail_ratio(state.samples)
    if ratio > PERIODICITY_TOLERANCE:
        raise NonPeriodicInput(f"Initial data are not periodic on the grid, spectral tail ratio {ratio:.3g}")
    return ratio


def evolve(initial: GridState, coeffs: Coefficients, options: SolverOptions, verbose: bool = False) -> Trajectory:
    """
    Integrate the equation from ``initial`` to ``options.t_end``.

    Parameters
    ----------
    initial : GridState
        Periodic initial data.
    coeffs : Coefficients
        Equation coefficients.
    options : SolverOptions
        Step, final time, dealiasing and recording interval.
    verbose : bool, optional
        Whether to show progress, default False.

    Returns
    -------
    Trajectory
        Initial state, every ``record_every``-th step and the final state.

    Raises
    ------
    NonPeriodicInput
        If the initial data are not effectively periodic.
    StabilityBoundViolated
        If ``dt`` exceeds the nonlinear stability bound of the initial data.
    InstabilityError
        If max |u| grows beyond ``INSTABILITY_FACTOR`` times its initial value or stops being finite.
    """
    check_periodic(initial)
    bound = stability_bound(initial, coeffs)
    if options.dt > bound:
        raise StabilityBoundViolated(f"Time step {options.dt:g} exceeds the nonlinear bound {bound:.3g}")
    stepper = _Stepper(initial.grid, coeffs, options)
    ceiling = INSTABILITY_FACTOR * max(float(np.max(np.abs(initial.samples))), np.finfo(float).tiny)
    steps = options.steps
    if verbose:
        logger.info(f"Evolving {initial.grid.points} modes over {steps} steps of {options.dt:g}")
    transform = fft.fft(initial.samples)
    states = [initial]
    for n in tqdm(range(1, steps + 1), desc="IF-RK4", disable=not verbose):
        transform = stepper.step(transform)
        if n % options.record_every and n != steps:
            continue
        samples = fft.ifft(transform)
        peak = float(np.max(np.abs(samples)))
        if not np.isfinite(peak) or peak > ceiling:
            raise InstabilityError(f"Amplitude {peak:.3g} exceeds {ceiling:.3g} at t={initial.t + n * options.dt:g}")
        states.append(GridState(grid=initial.grid, t=initial.t + n * options.dt, samples=samples))
    if verbose:
        logger.success(f"Reached t={states[-1].t:g} with {len(states)} recorded states")
    return Trajectory(states=states, options=options)


def wave_error(spec: SolutionSpec, coeffs: Coefficients, state: GridState) -> tuple[float, float]:
    """
    Maximum and discrete L2 norms, sqrt(h sum |e_j|^2), of the difference to the closed form at the state's time.
    """
    exact = closed_form.evaluate(spec, coeffs, state.t, state.grid.x)
    error = np.abs(state.samples - exact)
    return float(np.max(error)), float(np.sqrt(state.grid.spacing * np.sum(error**2)))


def pde_pointwise_residual(spec: SolutionSpec, coeffs: Coefficients, t, x, side: int | None = None):
    """Residual of the equation for a closed-form solution, see ``closed_form.pde_residual``."""
    return closed_form.pde_residual(spec, coeffs, t, x, side)


def quantity_series(trajectory: Trajectory, quantity: QuantityId | str, coeffs: Coefficients) -> np.ndarray:
    """Quadrature of a quantity at every recorded time."""
    return np.array([quantity_quadrature(quantity, state, coeffs) for state in trajectory.states])


def drift_report(
    trajectory: Trajectory, quantities: Iterable[QuantityId | str], coeffs: Coefficients
) -> dict[str, float]:
    """
    Relative drift max |C(t) - C(0)| / max(1, |C(0)|) of each quantity along the trajectory.

    Raises
    ------
    NonFiniteDensity
        If a density does not decay on the grid.
    """
    report = {}
    for quantity in quantities:
        quantity = QuantityId.parse(quantity)
        report[quantity.value] = drift(quantity_series(trajectory, quantity, coeffs))
    return report


def galilean_balance(trajectory: Trajectory, coeffs: Coefficients) -> np.ndarray:
    """2t E(t) - chi(t) P(t) at every recorded time; it equals 2G and stays at its initial value."""
    energy = quantity_series(trajectory, QuantityId.ENERGY, coeffs).real
    momentum = quantity_series(trajectory, QuantityId.MOMENTUM, coeffs).real
    centers = center_of_momentum(trajectory.states)
    times = np.array(trajectory.times)
    return 2 * times * energy - centers * momentum


class ConvergenceReport(BaseModel):
    """
    Errors of runs with successively halved time steps.

    Attributes
    ----------
    dts : list[float]
        Time steps, each half the previous one.
    errors : list[float]
        Maximum error at the final time, against the closed form when one is known and against the next finer
        run otherwise.
    """

    model_config = ConfigDict(frozen=True)

    dts: list[float]
    errors: list[float]

    @property
    def ratios(self) -> list[float]:
        """Successive error ratios; about 16 for a fourth-order scheme."""
        return [coarse / fine for coarse, fine in zip(self.errors, self.errors[1:]) if fine > 0]


def self_convergence(
    initial: GridState,
    coeffs: Coefficients,
    options: SolverOptions,
    levels: int = 3,
    spec: SolutionSpec | None = None,
) -> ConvergenceReport:
    """
    Evolve with dt, dt/2, ... and compare the final states.

    Parameters
    ----------
    levels : int, optional
        Number of step sizes, default 3; one more run is made when there is no closed form to compare against.
    spec : SolutionSpec, optional
        Closed form of the evolved solution; defaults to ``initial.spec``.
    """
    spec = spec if spec is not None else initial.spec
    runs = levels if spec is not None else levels + 1
    finals = []
    dts = []
    for level in range(runs):
        dt = options.dt / 2**level
        level_options = options.model_copy(update={"dt": dt, "record_every": 2 ** (level + 20)})
        finals.append(evolve(initial, coeffs, level_options).final)
        dts.append(dt)
    if spec is not None:
        errors = [wave_error(spec, coeffs, state)[0] for state in finals]
    else:
        errors = [float(np.max(np.abs(a.samples - b.samples))) for a, b in zip(finals, finals[1:])]
    logger.info(f"Self-convergence errors {', '.join(f'{error:.3g}' for error in errors)}")
    return ConvergenceReport(dts=dts[: len(errors)], errors=errors)


class Evolution(BaseMethod):
    """
    Evolves periodic data and monitors conserved quantities along the way.

    Methods
    -------
    calculate(initial, options)
        Integrate the equation.
    drift(trajectory, quantities)
        Relative drift of quantities along a trajectory.
    plot(trajectory)
        Modulus and phase of the recorded states.
    """

    def calculate(self, initial: GridState, options: SolverOptions = SolverOptions()) -> Trajectory:
        """
        Integrate the equation from ``initial``, see ``evolve``.

        Returns
        -------
        Trajectory
            Recorded states.
        """
        return evolve(initial, self.coefficients, options, self.verbose)

    def drift(self, trajectory: Trajectory, quantities: Iterable[QuantityId | str]) -> dict[str, float]:
        report = drift_report(trajectory, quantities, self.coefficients)
        if self.verbose:
            for quantity, value in report.items():
                logger.info(f"{quantity} drift {value:.3e}")
        return report

    @staticmethod
    def plot(trajectory: Trajectory, figsize: tuple[int, int] = (10, 6)):
        """
        Plots |u| and arg u of every recorded state.

        Parameters
        ----------
        trajectory : Trajectory
            Recorded states.
        figsize : tuple of int, optional
            Size of the figure to plot, by default (10, 6).
        """
        fig = plt.figure(figsize=figsize)
        grid = GridSpec(2, 1)
        ax_abs = fig.add_subplot(grid[0, 0])
        ax_arg = fig.add_subplot(grid[1, 0], sharex=ax_abs)
        colors = plt.cm.viridis(np.linspace(0, 1, len(trajectory.states)))
        for state, color in zip(trajectory.states, colors):
            frame = state.to_frame()
            ax_abs.plot(frame["x"], frame["abs_u"], color=color, linewidth=0.8, label=f"t={state.t:g}")
            ax_arg.plot(frame["x"], frame["arg_u"], color=color, linewidth=0.8)
        ax_abs.set_ylabel("|u|")
        ax_arg.set_ylabel("arg u")
        ax_arg.set_xlabel("x")
        ax_abs.legend(fontsize="small")
        ax_abs.set_title("Evolution")
