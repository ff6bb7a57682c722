"""
Catalog of conserved densities with their fluxes and of the low-order multipliers.

Densities are real polynomials in the components of u except ``CovMass`` and ``CovMom``, the complex densities u
and u^2 whose real and imaginary parts are T4/T5 and T6/T7 up to a factor. Where a flux coefficient such as
alpha + beta is complex while the case only forces Im alpha = Im beta, the real part of the displayed flux is
used.
"""
from enum import Enum
from fractions import Fraction
from typing import Callable

from pydantic import BaseModel, ConfigDict, InstanceOf

from ...errors import NotConserved
from ...jet import (
    JET_ORDER_CAP,
    ComplexJetPoly,
    JetPoly,
    invert_total_x_derivative,
    is_total_x_derivative,
    total_t_derivative,
    total_x_derivative,
)
from ...models import Coefficients
from ..equation import CASE_PREDICATES, classify


class EntryKind(Enum):
    """
    Kinds of catalog entries.

    Attributes
    ----------
    DENSITY : str
        Real density T.
    COMPLEX_DENSITY : str
        Complex density whose real and imaginary parts are both conserved.
    MULTIPLIER : str
        Multiplier Q = Q1 + i Q2.
    """

    DENSITY = "density"
    COMPLEX_DENSITY = "complex_density"
    MULTIPLIER = "multiplier"


class CatalogEntry(BaseModel):
    """
    One density or multiplier instantiated for exact coefficients.

    Parameters
    ----------
    id : str
        Catalog name, e.g. ``"T1"``, ``"CovMass"``, ``"M7"``.
    kind : EntryKind
        Density, complex density or multiplier.
    body : JetPoly or ComplexJetPoly
        The density (real or complex) or the multiplier.
    flux : JetPoly or ComplexJetPoly, optional
        Displayed flux X with D_t T + D_x X = 0 on solutions.
    case : str
        Name of the ``CaseFlags`` field that admits the entry.
    coefficients : Coefficients
        Coefficients the body was built with.
    link : str, optional
        Multiplier matching a real density.
    link_factor : Fraction
        Constant with variational_link(T) = link_factor * Q.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    id: str
    kind: EntryKind
    body: InstanceOf[JetPoly] | InstanceOf[ComplexJetPoly]
    flux: InstanceOf[JetPoly] | InstanceOf[ComplexJetPoly] | None = None
    case: str
    coefficients: Coefficients
    link: str | None = None
    link_factor: Fraction = Fraction(1)

    @property
    def predicate(self) -> str:
        return CASE_PREDICATES[self.case]

    @property
    def admitted(self) -> bool:
        return getattr(classify(self.coefficients), self.case)

    @property
    def is_density(self) -> bool:
        return self.kind is not EntryKind.MULTIPLIER

    @property
    def is_higher(self) -> bool:
        return self.id.startswith("H") or self.id in ("M9", "M10", "M11")


class _Jets:
    # complex building blocks of the catalog at fixed coefficients
    def __init__(self, coeffs: Coefficients, cap: int = JET_ORDER_CAP):
        self.cap = cap
        self.alpha = ComplexJetPoly.constant(coeffs.alpha, cap)
        self.beta = ComplexJetPoly.constant(coeffs.beta, cap)
        self.alpha1, self.beta1 = coeffs.alpha1, coeffs.beta1
        self.i = ComplexJetPoly.imaginary_unit(cap)
        self.t = ComplexJetPoly(JetPoly.t(cap))
        self.x = ComplexJetPoly(JetPoly.x(cap))

    def u(self, order: int = 0) -> ComplexJetPoly:
        return ComplexJetPoly.u(order, self.cap)

    def ub(self, order: int = 0) -> ComplexJetPoly:
        return ComplexJetPoly.ubar(order, self.cap)

    def one(self) -> ComplexJetPoly:
        return ComplexJetPoly.constant(1, self.cap)


HALF, QUARTER = Fraction(1, 2), Fraction(1, 4)


def _t1(j: _Jets):
    return j.u() * j.ub()


def _t2(j: _Jets):
    return -3 * j.u(1) * j.ub(1) + HALF * (j.alpha + j.beta) * j.u() ** 2 * j.ub() ** 2


def _t3(j: _Jets):
    return j.t * _t2(j) - j.x * j.u() * j.ub()


def _t4(j: _Jets):
    return j.u() + j.ub()


def _t5(j: _Jets):
    return j.i * (j.ub() - j.u())


def _t6(j: _Jets):
    return HALF * (j.u() ** 2 + j.ub() ** 2)


def _t7(j: _Jets):
    return HALF * j.i * (j.ub() ** 2 - j.u() ** 2)


def _t8(j: _Jets):
    return j.i * (j.u(1) * j.ub() - j.ub(1) * j.u())


def _h1(j: _Jets):
    u, ub = j.u, j.ub
    quadratic = HALF * j.i * (ub(2) * u(1) - u(2) * ub(1))
    quartic = QUARTER * j.i * j.alpha * (u() * ub() ** 2 * u(1) - u() ** 2 * ub() * ub(1))
    return quadratic + quartic


def _h2(j: _Jets):
    u, ub, a = j.u, j.ub, j.alpha
    return (
        6 * u(2) * ub(2)
        - QUARTER * a * (u() + ub()) * (u() - ub()) ** 2 * (u(2) + ub(2))
        + QUARTER * a * (2 * u() * ub() - 3 * u() ** 2 - 3 * ub() ** 2) * (u(1) ** 2 + ub(1) ** 2)
        - HALF * a * (u() ** 2 + 14 * u() * ub() + ub() ** 2) * u(1) * ub(1)
        + Fraction(1, 3) * a * a * u() ** 3 * ub() ** 3
    )


def _h3(j: _Jets):
    u, ub, b = j.u, j.ub, j.beta
    return (
        3 * u(2) * ub(2)
        - Fraction(3, 4) * b * (u() + ub()) * (u() - ub()) ** 2 * (u(2) + ub(2))
        - Fraction(1, 12) * b * (27 * u() ** 2 - 18 * u() * ub() + 27 * ub() ** 2) * (u(1) ** 2 + ub(1) ** 2)
        - HALF * b * (22 * u() * ub() + 3 * u() ** 2 + 3 * ub() ** 2) * u(1) * ub(1)
        + Fraction(8, 3) * b * b * u() ** 3 * ub() ** 3
    )


def _momentum_flux(j: _Jets):
    u, ub = j.u, j.ub
    return HALF * (j.alpha + j.beta) * u() ** 2 * ub() ** 2 - u(1) * ub(1) + u() * ub(2) + ub() * u(2)


def _energy_flux(j: _Jets):
    u, ub, a, b = j.u, j.ub, j.alpha, j.beta
    s = a + b
    return (
        3 * (u(2) * ub(2) - ub(1) * u(3) - u(1) * ub(3))
        + s * (u() * ub() ** 2 * u(2) + u() ** 2 * ub() * ub(2))
        - (5 * a + 2 * b) * u() * ub() * u(1) * ub(1)
        - HALF * (a + 4 * b) * (ub() ** 2 * u(1) ** 2 + u() ** 2 * ub(1) ** 2)
        + Fraction(1, 3) * s * s * u() ** 3 * ub() ** 3
    )


def _galilean_flux(j: _Jets):
    u, ub = j.u, j.ub
    return u() * ub(1) + ub() * u(1) - j.x * _momentum_flux(j) + j.t * _energy_flux(j)


def _covmass_flux(j: _Jets):
    return j.beta * j.u() ** 2 * j.ub() + j.u(2)


def _covmom_flux(j: _Jets):
    u = j.u
    return 2 * j.beta * u() ** 3 * j.ub() - u(1) ** 2 + 2 * u() * u(2)


def _twist_flux(j: _Jets):
    u, ub, i = j.u, j.ub, j.i
    return (
        i * j.alpha * (ub() ** 2 * u() * u(1) - ub() * u() ** 2 * ub(1))
        + i * ub() * u(3)
        - i * u() * ub(3)
        + 2 * i * (u(1) * ub(2) - ub(1) * u(2))
    )


def _real(builder: Callable) -> Callable:
    return lambda j: builder(j).re


def _imag(builder: Callable) -> Callable:
    return lambda j: builder(j).im


def _scaled(builder: Callable, factor: int) -> Callable:
    return lambda j: builder(j) * factor


# id: (body, flux, case, multiplier, link factor)
DENSITIES: dict[str, tuple] = {
    "T1": (_real(_t1), _real(_momentum_flux), "momentum_ok", "M3", 2),
    "T2": (_real(_t2), _real(_energy_flux), "energy_ok", "M7", 2),
    "T3": (_real(_t3), _real(_galilean_flux), "energy_ok", "M8", 2),
    "T4": (_real(_t4), _real(_scaled(_covmass_flux, 2)), "covmass_ok", "M1", 2),
    "T5": (_real(_t5), _imag(_scaled(_covmass_flux, 2)), "covmass_ok", "M2", 2),
    "T6": (_real(_t6), _real(_covmom_flux), "covmom_ok", "M5", 2),
    "T7": (_real(_t7), _imag(_covmom_flux), "covmom_ok", "M4", 2),
    "T8": (_real(_t8), _real(_twist_flux), "twist_ok", "M6", 4),
    "H1": (_real(_h1), None, "hirota", "M9", 2),
    "H2": (_real(_h2), None, "hirota", "M10", 2),
    "H3": (_real(_h3), None, "sasa_satsuma", "M11", 2),
}

COMPLEX_DENSITIES: dict[str, tuple] = {
    "CovMass": (lambda j: j.u(), _covmass_flux, "covmass_ok"),
    "CovMom": (lambda j: j.u() ** 2, _covmom_flux, "covmom_ok"),
}

MULTIPLIERS: dict[str, tuple] = {
    "M1": (lambda j: j.one(), "covmass_ok"),
    "M2": (lambda j: j.i, "covmass_ok"),
    "M3": (lambda j: j.u(), "momentum_ok"),
    "M4": (lambda j: j.i * j.ub(), "covmom_ok"),
    "M5": (lambda j: j.ub(), "covmom_ok"),
    "M6": (lambda j: j.i * j.u(1), "hirota"),
    "M7": (lambda j: 3 * j.u(2) + (j.alpha1 + j.beta1) * j.u() ** 2 * j.ub(), "energy_ok"),
    "M8": (
        lambda j: 3 * j.t * j.u(2) + (j.alpha1 + j.beta1) * j.t * j.u() ** 2 * j.ub() - j.x * j.u(),
        "energy_ok",
    ),
    "M9": (lambda j: j.i * (j.u(3) + j.alpha1 * j.u() * j.ub() * j.u(1)), "hirota"),
    "M10": (
        lambda j: 6 * j.u(4)
        + 2 * j.alpha1 * j.u() ** 2 * j.ub(2)
        + 8 * j.alpha1 * j.u() * j.ub() * j.u(2)
        + 6 * j.alpha1 * j.ub() * j.u(1) ** 2
        + 4 * j.alpha1 * j.u() * j.u(1) * j.ub(1)
        + j.alpha1**2 * j.u() ** 3 * j.ub() ** 2,
        "hirota",
    ),
    "M11": (
        lambda j: 3 * j.u(4)
        + 6 * j.beta1 * j.u() ** 2 * j.ub(2)
        + 14 * j.beta1 * j.u() * j.ub() * j.u(2)
        + 8 * j.beta1 * j.ub() * j.u(1) ** 2
        + 12 * j.beta1 * j.u() * j.ub(1) * j.u(1)
        + 8 * j.beta1**2 * j.u() ** 3 * j.ub() ** 2,
        "sasa_satsuma",
    ),
}

ENTRY_IDS = [*DENSITIES, *COMPLEX_DENSITIES, *MULTIPLIERS]


def entry(entry_id: str, coeffs: Coefficients) -> CatalogEntry:
    """
    Build one catalog entry for the coefficients, admitted or not.

    Raises
    ------
    KeyError
        If the id is unknown.
    """
    jets = _Jets(coeffs)
    if entry_id in DENSITIES:
        body, flux, case, link, factor = DENSITIES[entry_id]
        return CatalogEntry(
            id=entry_id,
            kind=EntryKind.DENSITY,
            body=body(jets),
            flux=flux(jets) if flux is not None else None,
            case=case,
            coefficients=coeffs,
            link=link,
            link_factor=Fraction(factor),
        )
    if entry_id in COMPLEX_DENSITIES:
        body, flux, case = COMPLEX_DENSITIES[entry_id]
        return CatalogEntry(
            id=entry_id,
            kind=EntryKind.COMPLEX_DENSITY,
            body=body(jets),
            flux=flux(jets),
            case=case,
            coefficients=coeffs,
        )
    if entry_id in MULTIPLIERS:
        body, case = MULTIPLIERS[entry_id]
        return CatalogEntry(id=entry_id, kind=EntryKind.MULTIPLIER, body=body(jets), case=case, coefficients=coeffs)
    raise KeyError(f"Unknown catalog entry {entry_id}")


def catalog(coeffs: Coefficients, admitted_only: bool = True) -> list[CatalogEntry]:
    """
    Catalog instantiated for exact coefficients.

    Parameters
    ----------
    coeffs : Coefficients
        Equation coefficients.
    admitted_only : bool, optional
        Drop entries whose coefficient case fails, default True.
    """
    flags = classify(coeffs)
    entries = []
    for entry_id in ENTRY_IDS:
        item = entry(entry_id, coeffs)
        if admitted_only and not getattr(flags, item.case):
            continue
        entries.append(item)
    return entries


def conservation_residual(item: CatalogEntry, coeffs: Coefficients | None = None):
    """
    D_t T + D_x X for a density with a flux, with u_t eliminated through the equation.

    Parameters
    ----------
    item : CatalogEntry
        Density entry carrying a flux.
    coeffs : Coefficients, optional
        Coefficients of the equation used for D_t; those of the entry by default.

    Returns
    -------
    JetPoly or ComplexJetPoly
        The zero polynomial exactly when the pair is a conservation law.
    """
    if item.flux is None:
        raise ValueError(f"{item.id} carries no flux, use flux_from_density")
    coeffs = coeffs or item.coefficients
    return total_t_derivative(item.body, coeffs) + total_x_derivative(item.flux)


def flux_from_density(density: JetPoly, coeffs: Coefficients) -> JetPoly:
    """
    Flux X with D_t T + D_x X = 0, reconstructed by the homotopy inverse of D_x.

    Raises
    ------
    NotConserved
        If D_t T is not a total x-derivative.
    """
    rate = total_t_derivative(density, coeffs)
    if not is_total_x_derivative(rate):
        raise NotConserved("D_t T is not a total x-derivative for these coefficients")
    return -invert_total_x_derivative(rate)
