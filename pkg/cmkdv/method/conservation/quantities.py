"""
Conserved quantities: quadrature of the catalog densities on grids, closed-form values for the travelling waves,
the center of momentum and the rate of change of a windowed quantity from its flux.
"""
import math
from enum import Enum
from fractions import Fraction
from typing import Iterable

import numpy as np

from ...errors import NonFiniteDensity, NotTabulated, ZeroMomentum
from ...models import Coefficients, Family, Grid, GridState, SolutionSpec
from .. import closed_form
from ..equation import classify, sigma
from ..spectral import spectral_jets
from .catalog import CatalogEntry, EntryKind, entry, flux_from_density

FINITENESS_TOLERANCE = 1e-6


class QuantityId(Enum):
    """
    Integrated densities.

    Attributes
    ----------
    MOMENTUM : str
        P, the integral of T1 = |u|^2.
    ENERGY : str
        E, half the integral of T2.
    GALILEAN : str
        G, half the integral of T3.
    COV_MASS : str
        Complex mass, the integral of u.
    COV_MOM : str
        Complex momentum, the integral of u^2.
    TWIST : str
        W, the integral of T8 = i(u_x conj(u) - conj(u)_x u).
    H1, H2, H3 : str
        Integrals of the higher densities.
    """

    MOMENTUM = "P"
    ENERGY = "E"
    GALILEAN = "G"
    COV_MASS = "Mtilde"
    COV_MOM = "Ptilde"
    TWIST = "W"
    H1 = "H1"
    H2 = "H2"
    H3 = "H3"

    @classmethod
    def parse(cls, value: "QuantityId | str") -> "QuantityId":
        if isinstance(value, cls):
            return value
        for item in cls:
            if value in (item.value, item.name):
                return item
        raise ValueError(f"Unknown quantity {value}")

    @property
    def entry_id(self) -> str:
        return _DENSITY_OF[self][0]

    @property
    def weight(self) -> Fraction:
        return _DENSITY_OF[self][1]


_DENSITY_OF = {
    QuantityId.MOMENTUM: ("T1", Fraction(1)),
    QuantityId.ENERGY: ("T2", Fraction(1, 2)),
    QuantityId.GALILEAN: ("T3", Fraction(1, 2)),
    QuantityId.COV_MASS: ("CovMass", Fraction(1)),
    QuantityId.COV_MOM: ("CovMom", Fraction(1)),
    QuantityId.TWIST: ("T8", Fraction(1)),
    QuantityId.H1: ("H1", Fraction(1)),
    QuantityId.H2: ("H2", Fraction(1)),
    QuantityId.H3: ("H3", Fraction(1)),
}

TABLE_QUANTITIES = [
    QuantityId.MOMENTUM,
    QuantityId.ENERGY,
    QuantityId.GALILEAN,
    QuantityId.COV_MASS,
    QuantityId.COV_MOM,
    QuantityId.TWIST,
]


def _generator_values(t, x, jets: np.ndarray) -> list:
    # positions t, x, u1, u2, u1_x, u2_x, ...
    x = np.asarray(x, dtype=float)
    values = [np.broadcast_to(np.asarray(t, dtype=float), x.shape), x]
    for jet in jets:
        values.extend([jet.real, jet.imag])
    return values


def _density_order(item: CatalogEntry) -> int:
    return max(item.body.order, 0)


def density_values(item: CatalogEntry, t, x, jets: np.ndarray) -> np.ndarray:
    """Density of a catalog entry at points with the given jets of u (stacked by order)."""
    values = _generator_values(t, x, jets)
    result = item.body.evaluate(values)
    return np.broadcast_to(result, np.shape(x))


def _integrate(values: np.ndarray, spacing: float, quantity: QuantityId):
    edge = max(abs(values[0]), abs(values[-1]))
    if edge > FINITENESS_TOLERANCE * max(1.0, float(np.max(np.abs(values)))):
        raise NonFiniteDensity(f"{quantity.value}: density does not decay at the window edges ({edge:.3g})")
    total = complex(np.sum(values) * spacing) * float(quantity.weight)
    return total if np.iscomplexobj(values) else total.real


def analytic_jets(spec: SolutionSpec, coeffs: Coefficients, t: float, x, order: int) -> np.ndarray:
    """Analytic jets on points; one-sided away from the crest of Cusp and Peakon, from the right at it."""
    if not spec.family.has_cusp:
        return closed_form.jets(spec, coeffs, t, x, order)
    x = np.asarray(x, dtype=float)
    right = closed_form.jets(spec, coeffs, t, x, order, side=1)
    left = closed_form.jets(spec, coeffs, t, x, order, side=-1)
    return np.where(x >= spec.c * t + spec.xi0, right, left)


def quantity_from_jets(
    quantity: QuantityId | str, coeffs: Coefficients, t: float, x, jets: np.ndarray, spacing: float
):
    """
    Quantity from jets of u sampled on uniform nodes.

    Raises
    ------
    NonFiniteDensity
        If the density does not decay at the ends of the nodes.
    """
    quantity = QuantityId.parse(quantity)
    item = entry(quantity.entry_id, coeffs)
    return _integrate(density_values(item, t, x, jets), spacing, quantity)


def window_density(
    quantity: QuantityId | str, spec: SolutionSpec, coeffs: Coefficients, half_width: float, spacing: float, t=0.0
) -> tuple[np.ndarray, np.ndarray]:
    """Uniform nodes on [-L, L) and the unweighted density of a closed-form solution on them."""
    quantity = QuantityId.parse(quantity)
    item = entry(quantity.entry_id, coeffs)
    x = -half_width + spacing * np.arange(int(round(2 * half_width / spacing)))
    jets = analytic_jets(spec, coeffs, t, x, _density_order(item))
    return x, density_values(item, t, x, jets)


def window_quantity(
    quantity: QuantityId | str, spec: SolutionSpec, coeffs: Coefficients, half_width: float, spacing: float, t=0.0
):
    """Quantity of a closed-form solution on [-L, L] from analytic jets."""
    quantity = QuantityId.parse(quantity)
    _, values = window_density(quantity, spec, coeffs, half_width, spacing, t)
    return _integrate(values, spacing, quantity)


def quantity_quadrature(quantity: QuantityId | str, state: GridState, coeffs: Coefficients):
    """
    Quantity of a grid state by the periodic trapezoid rule.

    Derivatives are spectral, except for states sampled from kinks or cusped waves, whose analytic jets are used.

    Raises
    ------
    NonFiniteDensity
        If the density does not decay towards the ends of the grid.
    """
    quantity = QuantityId.parse(quantity)
    item = entry(quantity.entry_id, coeffs)
    order = _density_order(item)
    spec = state.spec
    if spec is not None and (spec.family.is_kink or spec.family.has_cusp):
        jets = analytic_jets(spec, coeffs, state.t, state.grid.x, order)
    else:
        jets = spectral_jets(state, order)
    return _integrate(density_values(item, state.t, state.grid.x, jets), state.grid.spacing, quantity)


def _not_tabulated(quantity: QuantityId, family: Family):
    return NotTabulated(f"No closed form of {quantity.value} for {family.value}")


def analytic_quantity(quantity: QuantityId | str, spec: SolutionSpec, coeffs: Coefficients):
    """
    Closed-form value of a quantity for a solution family.

    Raises
    ------
    NotTabulated
        If no closed form is known for the pair.
    """
    return analytic_quantity_variants(quantity, spec, coeffs)["displayed"]


def analytic_quantity_variants(quantity: QuantityId | str, spec: SolutionSpec, coeffs: Coefficients) -> dict:
    """
    Closed-form values, with alternatives where the displayed formula is in doubt.

    Returns
    -------
    dict
        ``"displayed"`` always; ``"linear_phase_rate"`` for the linear-phase soliton twist with sqrt(c + 3k^2)
        in place of sqrt(c^2 + 3k^2); ``"amplitude"`` for the peakon momentum A^2 / kappa.
    """
    quantity = QuantityId.parse(quantity)
    closed_form.require_valid(spec, coeffs)
    family, c, k = spec.family, spec.c, spec.k
    rotation = complex(math.cos(spec.phi), math.sin(spec.phi))
    alpha = float(coeffs.alpha1)
    if family is Family.SECH:
        s = float(coeffs.alpha1 + coeffs.beta1)
        momentum = 12 * math.sqrt(c) / s
        values = {
            QuantityId.MOMENTUM: momentum,
            QuantityId.ENERGY: 6 * c**1.5 / s,
            QuantityId.GALILEAN: -spec.xi0 * momentum / 2,
            QuantityId.TWIST: 0.0,
        }
        flags = classify(coeffs)
        # the closed forms substitute alpha = 2 beta and alpha = 3 beta into the amplitude
        if flags.covmass_ok:
            values[QuantityId.COV_MASS] = 2 * math.pi * rotation / math.sqrt(alpha)
        if flags.covmom_ok:
            values[QuantityId.COV_MOM] = 9 * math.sqrt(c) * rotation**2 / alpha
        if quantity in values:
            return {"displayed": values[quantity]}
    elif family is Family.LP_SOLITON:
        kappa = math.sqrt(c + 3 * k**2)
        momentum = 12 * kappa / alpha
        values = {
            QuantityId.MOMENTUM: momentum,
            QuantityId.ENERGY: 6 * c * kappa / alpha,
            QuantityId.GALILEAN: -spec.xi0 * momentum / 2,
        }
        if quantity in values:
            return {"displayed": values[quantity]}
        if quantity is QuantityId.TWIST:
            return {
                "displayed": -12 * k * math.sqrt(c**2 + 3 * k**2) / alpha,
                "linear_phase_rate": -12 * k * kappa / alpha,
            }
    elif family is Family.KINK1 and quantity is QuantityId.TWIST:
        return {"displayed": 0.0}
    elif family is Family.KINK2 and quantity is QuantityId.TWIST:
        Theta = spec.Theta
        return {"displayed": 2 * math.sqrt(3) * c * math.sinh(Theta) / math.cosh(Theta) ** 2 / alpha}
    elif family is Family.PEAKON and quantity is QuantityId.MOMENTUM:
        square = float(sigma(coeffs).value) ** 2
        kappa = math.sqrt(c * square / (square - 3))
        return {"displayed": math.sqrt((square - 3) / (c * square)), "amplitude": spec.A**2 / kappa}
    raise _not_tabulated(quantity, family)


def center_of_momentum(states: Iterable[GridState]) -> np.ndarray:
    """
    Center of momentum chi = (1/P) integral of x |u|^2 for each state.

    Raises
    ------
    ZeroMomentum
        If a state carries no momentum.
    """
    centers = []
    for state in states:
        weight = np.abs(state.samples) ** 2
        momentum = float(np.sum(weight))
        if momentum == 0:
            raise ZeroMomentum(f"Momentum vanishes at t={state.t}")
        centers.append(float(np.sum(state.grid.x * weight)) / momentum)
    return np.array(centers)


def _flux(item: CatalogEntry, coeffs: Coefficients):
    if item.flux is not None:
        return item.flux
    return flux_from_density(item.body, coeffs)


def flux_jump_rate(
    quantity: QuantityId | str, spec: SolutionSpec, coeffs: Coefficients, half_width: float, t: float = 0.0
):
    """
    Time derivative of the quantity on [-L, L] for a closed-form solution.

    The rate is X(-L) - X(L) from the window edges plus, across the crest of cusped waves moving with speed c,
    the flux jump X(+) - X(-) minus c times the density jump T(+) - T(-).
    """
    quantity = QuantityId.parse(quantity)
    item = entry(quantity.entry_id, coeffs)
    flux = _flux(item, coeffs)
    order = max(flux.order, _density_order(item), 0)
    edges = np.array([-half_width, half_width])
    jets = analytic_jets(spec, coeffs, t, edges, order)
    flux_values = np.broadcast_to(flux.evaluate(_generator_values(t, edges, jets)), edges.shape)
    rate = complex(flux_values[0] - flux_values[1])
    if spec.family.has_cusp:
        crest = np.array([spec.c * t + spec.xi0])
        sides = {}
        for side in (1, -1):
            crest_jets = closed_form.jets(spec, coeffs, t, crest, order, side=side)
            values = _generator_values(t, crest, crest_jets)
            flux_value = np.ravel(flux.evaluate(values))[0]
            density_value = np.ravel(item.body.evaluate(values))[0]
            sides[side] = (complex(flux_value), complex(density_value))
        rate += (sides[1][0] - sides[-1][0]) - spec.c * (sides[1][1] - sides[-1][1])
    rate *= float(quantity.weight)
    return rate if item.kind is EntryKind.COMPLEX_DENSITY else rate.real


def drift(values: Iterable) -> float:
    """max |C(t) - C(0)| / max(1, |C(0)|) over a series of values."""
    values = list(values)
    start = values[0]
    return max(abs(value - start) for value in values) / max(1.0, abs(start))


def grid_for(half_width: float, spacing: float) -> Grid:
    """Grid of the given half width and spacing; 2L/h must be a power of two."""
    return Grid(half_width=half_width, points=int(round(2 * half_width / spacing)))
