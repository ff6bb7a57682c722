"""
Closed-form travelling waves: parameter validation, vectorized evaluation, analytic jets and time derivatives,
asymptotic limits and sampling onto grids.

Every family is written once as a sympy expression in t and x and differentiated symbolically; the derivatives
are compiled with ``sympy.lambdify`` for numpy. Families with a cusp at the crest (Cusp, Peakon) have one
expression per side of the crest.
"""
import math
from functools import lru_cache

import numpy as np
import sympy as sp
from loguru import logger

from ..errors import EvaluationAtSingularity, InvalidSolution, JetAtCusp, SigmaInconsistent, SigmaUndefined
from ..jet import JetPoint
from ..models import AsymptoticPair, Coefficients, Family, Grid, GridState, SolutionSpec
from .equation import classify, sigma

MAX_JET_ORDER = 4

_t, _x = sp.symbols("t x", real=True)
_c, _phi, _theta, _Theta, _k, _A, _xi0, _s, _sigma, _eps = sp.symbols(
    "c phi theta Theta k A xi0 s sigma epsilon", real=True
)
_PARAMETERS = (_c, _phi, _theta, _Theta, _k, _A, _xi0, _s, _sigma, _eps)

SUM_SCALED = (Family.SOLITARY3, Family.SOLITARY4, Family.SECH, Family.KINK1)


def linear_phase_frequency(c: float, k: float) -> float:
    """Frequency w = -(3c + 8k^2) k of the linear phase."""
    return -(3 * c + 8 * k**2) * k


def _expression(family: Family, side: int) -> sp.Expr:
    c, phi, theta, Theta, k, A, s, sig, eps = _c, _phi, _theta, _Theta, _k, _A, _s, _sigma, _eps
    X = _x - _xi0
    xi = X - c * _t
    rotation = sp.exp(sp.I * phi)
    sech = 1 / sp.cosh(Theta)

    if family is Family.SOLITARY1:
        denominator = 2 * sp.cos(theta) * sp.sinh(Theta) + sp.sqrt(
            6 + 4 * sp.cos(theta) ** 2 * sp.sinh(Theta) ** 2
        ) * sp.cosh(sp.sqrt(c) * xi * sech)
        return rotation * sp.sqrt(c / s) * (sp.exp(sp.I * theta) * sp.tanh(Theta) + 6 * sech / denominator)
    if family is Family.SOLITARY2:
        profile = sp.exp(sp.I * theta) - 12 * sp.cos(theta) / (3 + 2 * c * xi**2 * sp.cos(theta) ** 2)
        return rotation * sp.sqrt(c / s) * profile
    if family is Family.SOLITARY3:
        denominator = 2 * sp.sinh(Theta) + sp.sqrt(6 + 4 * sp.sinh(Theta) ** 2) * sp.cosh(sp.sqrt(c) * xi * sech)
        return rotation * sp.sqrt(c / s) * (sp.tanh(Theta) + 6 * sech / denominator)
    if family is Family.SOLITARY4:
        return rotation * sp.sqrt(c / s) * (1 - 12 / (3 + 2 * c * xi**2))
    if family is Family.SECH:
        return rotation * sp.sqrt(6 * c / s) / sp.cosh(sp.sqrt(c) * xi)
    if family is Family.CUSP:
        return rotation * (sp.sinh(Theta) + sp.exp(-sp.sqrt(c) * side * xi))
    if family is Family.KINK1:
        return rotation * sp.sqrt(3 * c / s) * sp.tanh(sp.sqrt(-c / 2) * xi)
    if family is Family.KINK2:
        return (
            rotation
            * sp.sqrt(c / s)
            * (sp.I * sp.tanh(Theta) + sp.sqrt(3) * sech * sp.tanh(sp.sqrt(-c / 2) * xi * sech))
        )
    carrier = sp.exp(sp.I * k * (X - (3 * c + 8 * k**2) * _t))
    if family is Family.LP_SOLITON:
        kappa = sp.sqrt(c + 3 * k**2)
        return sp.sqrt(6 * kappa**2 / s) * rotation * carrier / sp.cosh(kappa * xi)
    if family is Family.LP_KINK:
        kappa2 = c + 3 * k**2
        return sp.sqrt(3 * kappa2 / s) * rotation * carrier * sp.tanh(sp.sqrt(-kappa2 / 2) * xi)
    if family is Family.PEAKON:
        slope = sp.sqrt(c / (sig**2 - 3))
        rate = sp.sqrt(c * sig**2 / (sig**2 - 3))
        speed = (3 * sig**2 - 1) / (sig**2 - 3) * c
        return A * rotation * sp.exp(sp.I * eps * slope * (X - speed * _t)) * sp.exp(-rate * side * xi)
    raise ValueError(f"Unknown family {family}")


@lru_cache(maxsize=None)
def _compiled(family: Family, side: int):
    # value, x-derivatives up to MAX_JET_ORDER and the t-derivative
    expression = _expression(family, side)
    derivatives = [expression]
    for _ in range(MAX_JET_ORDER):
        derivatives.append(sp.diff(derivatives[-1], _x))
    derivatives.append(sp.diff(expression, _t))
    return sp.lambdify((_t, _x, *_PARAMETERS), derivatives, modules="numpy", cse=True)


def amplitude_scalar(family: Family, coeffs: Coefficients) -> float:
    """Real coefficient under the amplitude square roots: Re(alpha + beta) or Re alpha."""
    if family in SUM_SCALED:
        return float(coeffs.alpha1 + coeffs.beta1)
    return float(coeffs.alpha1)


def _sigma_value(family: Family, coeffs: Coefficients) -> float:
    if family is not Family.PEAKON:
        return 0.0
    return float(sigma(coeffs).value)


def validate(spec: SolutionSpec, coeffs: Coefficients) -> list[str]:
    """
    Admissibility of a solution for the given coefficients.

    Returns
    -------
    list[str]
        Violated conditions as ``"<condition> violated"``; empty when the solution is admissible.
    """
    flags = classify(coeffs)
    a1, s1 = coeffs.alpha1, coeffs.alpha1 + coeffs.beta1
    c, k = spec.c, spec.k
    family = spec.family
    conditions: list[tuple[bool, str]] = []
    if family in (Family.SOLITARY1, Family.SOLITARY2):
        conditions = [(flags.hirota, "Im alpha=0, beta=0"), (a1 > 0, "alpha>0"), (c > 0, "c>0")]
    elif family in (Family.SOLITARY3, Family.SOLITARY4, Family.SECH):
        conditions = [(flags.sech_case, "Im(alpha+beta)=0"), (s1 > 0, "alpha+beta>0"), (c > 0, "c>0")]
    elif family is Family.CUSP:
        conditions = [(flags.airy_degenerate, "alpha+beta=0"), (c > 0, "c>0")]
    elif family is Family.KINK1:
        conditions = [(flags.sech_case, "Im(alpha+beta)=0"), (s1 < 0, "alpha+beta<0"), (c < 0, "c<0")]
    elif family is Family.KINK2:
        conditions = [(flags.hirota, "Im alpha=0, beta=0"), (a1 < 0, "alpha<0"), (c < 0, "c<0")]
    elif family is Family.LP_SOLITON:
        conditions = [(flags.hirota, "Im alpha=0, beta=0"), (a1 > 0, "alpha>0"), (c + 3 * k**2 > 0, "c+3k^2>0")]
    elif family is Family.LP_KINK:
        conditions = [(flags.hirota, "Im alpha=0, beta=0"), (a1 < 0, "alpha<0"), (c + 3 * k**2 < 0, "c+3k^2<0")]
    elif family is Family.PEAKON:
        try:
            value = float(sigma(coeffs).value)
        except (SigmaUndefined, SigmaInconsistent):
            value = None
        conditions = [(value is not None and value != 0, "sigma defined and non-zero")]
        if value is not None:
            square = value**2
            conditions.append(((c > 0 and square > 3) or (c < 0 and square < 3), "c>0, sigma^2>3 or c<0, sigma^2<3"))
    return [f"{message} violated" for holds, message in conditions if not holds]


def require_valid(spec: SolutionSpec, coeffs: Coefficients) -> None:
    """
    Raises
    ------
    InvalidSolution
        Listing every violated condition.
    """
    violations = validate(spec, coeffs)
    if violations:
        raise InvalidSolution(f"{spec.family.value}: " + "; ".join(violations))


def _crest(spec: SolutionSpec, t):
    return spec.c * np.asarray(t, dtype=float) + spec.xi0


def _evaluate_all(spec: SolutionSpec, coeffs: Coefficients, t, x, side: int | None) -> list[np.ndarray]:
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    t, x = np.broadcast_arrays(t, x)
    family = spec.family
    s = amplitude_scalar(family, coeffs)
    sig = _sigma_value(family, coeffs)

    def branch(branch_side: int) -> list[np.ndarray]:
        eps = branch_side * math.copysign(1.0, sig) if sig else 0.0
        values = _compiled(family, branch_side)(
            t, x, spec.c, spec.phi, spec.theta, spec.Theta, spec.k, spec.A, spec.xi0, s, sig, eps
        )
        return [np.broadcast_to(np.asarray(value, dtype=complex), t.shape) for value in values]

    if not family.has_cusp:
        return branch(1)
    if side is not None:
        return branch(side)
    right, left = branch(1), branch(-1)
    on_right = (x - _crest(spec, t)) >= 0
    return [np.where(on_right, r, l) for r, l in zip(right, left)]


def _check_finite(values: np.ndarray, spec: SolutionSpec) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise EvaluationAtSingularity(f"{spec.family.value} is singular at some of the requested points")
    return values


def evaluate(spec: SolutionSpec, coeffs: Coefficients, t, x) -> np.ndarray | complex:
    """
    Value u(t, x) of the closed-form solution.

    At the crest of Cusp and Peakon the value from the right is returned.

    Raises
    ------
    InvalidSolution
        If the solution is not admissible.
    EvaluationAtSingularity
        If the value is not finite.
    """
    require_valid(spec, coeffs)
    value = _check_finite(_evaluate_all(spec, coeffs, t, x, None)[0], spec)
    return value[()] if value.ndim == 0 else value


def _side_for(spec: SolutionSpec, t, x, side: int | None) -> int | None:
    if not spec.family.has_cusp or side is not None:
        return side
    offsets = np.asarray(x, dtype=float) - _crest(spec, t)
    if np.any(offsets == 0):
        raise JetAtCusp(f"{spec.family.value} has no two-sided derivatives at its crest, pass a side")
    return None


def jets(spec: SolutionSpec, coeffs: Coefficients, t, x, order: int = 3, side: int | None = None) -> np.ndarray:
    """
    Complex x-derivatives of u of orders 0..order stacked along the first axis.

    Parameters
    ----------
    side : {-1, 1}, optional
        Side of the crest for Cusp and Peakon; one-sided derivatives are returned. Required at the crest.

    Raises
    ------
    JetAtCusp
        If a crest point is requested without a side.
    """
    if not 0 <= order <= MAX_JET_ORDER:
        raise ValueError(f"Jet order must lie in [0, {MAX_JET_ORDER}]")
    require_valid(spec, coeffs)
    side = _side_for(spec, t, x, side)
    values = _evaluate_all(spec, coeffs, t, x, side)
    return _check_finite(np.stack(values[: order + 1]), spec)


def time_derivative(spec: SolutionSpec, coeffs: Coefficients, t, x, side: int | None = None) -> np.ndarray:
    """Analytic u_t of the travelling (or linear-phase) form."""
    require_valid(spec, coeffs)
    side = _side_for(spec, t, x, side)
    return _check_finite(_evaluate_all(spec, coeffs, t, x, side)[-1], spec)


def evaluate_jet(
    spec: SolutionSpec, coeffs: Coefficients, t: float, x: float, order: int = MAX_JET_ORDER, side: int | None = None
) -> JetPoint:
    """Analytic jet of the solution at one point as a ``JetPoint``."""
    values = jets(spec, coeffs, t, x, order, side)
    return JetPoint.from_components(u1=values.real.tolist(), u2=values.imag.tolist(), t=t, x=x)


def pde_residual(spec: SolutionSpec, coeffs: Coefficients, t, x, side: int | None = None) -> np.ndarray:
    """Pointwise residual u_t + alpha conj(u) u u_x + beta u^2 conj(u)_x + u_xxx from analytic derivatives."""
    require_valid(spec, coeffs)
    side = _side_for(spec, t, x, side)
    values = _check_finite(np.stack(_evaluate_all(spec, coeffs, t, x, side)), spec)
    u, ux, uxxx, ut = values[0], values[1], values[3], values[-1]
    alpha, beta = coeffs.alpha_value, coeffs.beta_value
    return ut + alpha * np.conj(u) * u * ux + beta * u**2 * np.conj(ux) + uxxx


def asymptotics(spec: SolutionSpec, coeffs: Coefficients) -> AsymptoticPair:
    """
    Limits of u for x to minus and plus infinity with the rate at which they are approached.
    """
    require_valid(spec, coeffs)
    family = spec.family
    c, k, Theta = spec.c, spec.k, spec.Theta
    rotation = complex(math.cos(spec.phi), math.sin(spec.phi))
    s = amplitude_scalar(family, coeffs)
    if family is Family.SOLITARY1:
        limit = rotation * math.sqrt(c / s) * complex(math.cos(spec.theta), math.sin(spec.theta)) * math.tanh(Theta)
        return AsymptoticPair(u_minus=limit, u_plus=limit, decay_rate=math.sqrt(c) / math.cosh(Theta))
    if family is Family.SOLITARY2:
        limit = rotation * math.sqrt(c / s) * complex(math.cos(spec.theta), math.sin(spec.theta))
        return AsymptoticPair(u_minus=limit, u_plus=limit, algebraic=True)
    if family is Family.SOLITARY3:
        limit = rotation * math.sqrt(c / s) * math.tanh(Theta)
        return AsymptoticPair(u_minus=limit, u_plus=limit, decay_rate=math.sqrt(c) / math.cosh(Theta))
    if family is Family.SOLITARY4:
        limit = rotation * math.sqrt(c / s)
        return AsymptoticPair(u_minus=limit, u_plus=limit, algebraic=True)
    if family is Family.CUSP:
        limit = rotation * math.sinh(Theta)
        return AsymptoticPair(u_minus=limit, u_plus=limit, decay_rate=math.sqrt(c))
    if family is Family.SECH:
        return AsymptoticPair(u_minus=0, u_plus=0, decay_rate=math.sqrt(c))
    if family is Family.KINK1:
        level = rotation * math.sqrt(3 * c / s)
        return AsymptoticPair(u_minus=-level, u_plus=level, decay_rate=math.sqrt(-2 * c))
    if family is Family.KINK2:
        scale = rotation * math.sqrt(c / s)
        offset = 1j * math.tanh(Theta)
        edge = math.sqrt(3) / math.cosh(Theta)
        return AsymptoticPair(
            u_minus=scale * (offset - edge),
            u_plus=scale * (offset + edge),
            decay_rate=math.sqrt(-2 * c) / math.cosh(Theta),
        )
    if family is Family.LP_SOLITON:
        return AsymptoticPair(u_minus=0, u_plus=0, decay_rate=math.sqrt(c + 3 * k**2))
    if family is Family.LP_KINK:
        level = rotation * math.sqrt(3 * (c + 3 * k**2) / s)
        return AsymptoticPair(
            u_minus=-level, u_plus=level, decay_rate=math.sqrt(-2 * (c + 3 * k**2)), phase_converges=k == 0
        )
    value = float(sigma(coeffs).value)
    return AsymptoticPair(u_minus=0, u_plus=0, decay_rate=math.sqrt(c * value**2 / (value**2 - 3)))


def sample_grid(spec: SolutionSpec, coeffs: Coefficients, grid: Grid, t: float = 0.0) -> GridState:
    """Samples of the solution on a grid, tagged with their SolutionSpec."""
    samples = evaluate(spec, coeffs, t, grid.x)
    edge = abs(samples[0] - samples[-1])
    if spec.family.is_kink:
        logger.warning(f"{spec.family.value} has different limits and is not periodic on the grid")
    elif edge > 1e-8 * max(float(np.max(np.abs(samples))), 1.0):
        logger.warning(f"{spec.family.value} does not match across the grid boundary, jump {edge:.3g}")
    return GridState(grid=grid, t=t, samples=samples, spec=spec)
