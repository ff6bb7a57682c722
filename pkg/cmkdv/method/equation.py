"""
The equation family u_t + alpha conj(u) u u_x + beta u^2 conj(u)_x + gamma u_xxx = 0: normalization of gamma,
component right-hand sides and the coefficient cases.
"""
import math
from fractions import Fraction

from ..errors import InvalidCoefficients, SigmaInconsistent, SigmaUndefined
from ..jet import JET_ORDER_CAP, JetPoly, evolution_rhs
from ..models import CaseFlags, Coefficients, ScaleReport, Sigma, SolutionSpec
from ..utils.numbers import parse_complex

CASE_PREDICATES = {
    "momentum_ok": "Im alpha = Im beta",
    "energy_ok": "Im alpha = Im beta = 0",
    "covmass_ok": "alpha = 2 beta",
    "covmom_ok": "alpha = 3 beta",
    "twist_ok": "Im alpha = 0, beta = 0",
    "sech_case": "Im(alpha + beta) = 0",
    "airy_degenerate": "alpha + beta = 0",
    "peakon_case": "|alpha| = |beta|, sigma defined and non-zero",
    "hirota": "Im alpha = 0, beta = 0",
    "sasa_satsuma": "alpha = 3 beta, Im alpha = Im beta = 0",
}


def normalize(alpha, beta, gamma=1) -> tuple[Coefficients, ScaleReport]:
    """
    Normalize the dispersion coefficient to one.

    Rescaling t -> sqrt(gamma) t and x -> sqrt(gamma) x removes gamma and leaves alpha, beta unchanged.

    Parameters
    ----------
    alpha, beta : complex or str
        Nonlinear coefficients.
    gamma : float, optional
        Positive real dispersion coefficient, default 1.

    Returns
    -------
    tuple[Coefficients, ScaleReport]
        Unchanged coefficients and the scale factor of t and x.

    Raises
    ------
    InvalidCoefficients
        If gamma is not a positive real number.
    """
    gamma_re, gamma_im = parse_complex(gamma)
    if gamma_im != 0 or gamma_re <= 0:
        raise InvalidCoefficients(f"Dispersion coefficient must be real and positive, got {gamma}")
    scale = math.sqrt(gamma_re)
    coeffs = Coefficients.from_complex(alpha, beta)
    return coeffs, ScaleReport(gamma=float(gamma_re), t_scale=scale, x_scale=scale)


def pde_rhs(coeffs: Coefficients, cap: int = JET_ORDER_CAP) -> tuple[JetPoly, JetPoly]:
    """Right-hand sides (u1_t, u2_t) of the component system."""
    return evolution_rhs(coeffs.alpha, coeffs.beta, cap)


def sigma(coeffs: Coefficients) -> Sigma:
    """
    Real sigma with alpha - beta = -i sigma (alpha + beta).

    Both Re(alpha - beta) / Im(alpha + beta) and -Im(alpha - beta) / Re(alpha + beta) define it. A quotient
    with a vanishing denominator must have a vanishing numerator and then the other quotient decides.

    Raises
    ------
    SigmaUndefined
        If alpha + beta = 0 or |alpha| != |beta|.
    SigmaInconsistent
        If the two quotients disagree.
    """
    d1, d2 = coeffs.alpha1 - coeffs.beta1, coeffs.alpha2 - coeffs.beta2
    s1, s2 = coeffs.alpha1 + coeffs.beta1, coeffs.alpha2 + coeffs.beta2
    if s1 == 0 and s2 == 0:
        raise SigmaUndefined("Sigma is undefined for alpha + beta = 0")
    if coeffs.alpha1**2 + coeffs.alpha2**2 != coeffs.beta1**2 + coeffs.beta2**2:
        raise SigmaUndefined("Sigma needs |alpha| = |beta|")
    first = d1 / s2 if s2 != 0 else None
    second = -d2 / s1 if s1 != 0 else None
    if first is None and d1 != 0 or second is None and d2 != 0:
        raise SigmaInconsistent("A sigma quotient has a zero denominator and a non-zero numerator")
    if first is not None and second is not None and first != second:
        raise SigmaInconsistent(f"Sigma quotients disagree: {first} != {second}")
    return Sigma(value=first if first is not None else second)


def _sigma_or_none(coeffs: Coefficients) -> Fraction | None:
    try:
        return sigma(coeffs).value
    except (SigmaUndefined, SigmaInconsistent):
        return None


def classify(coeffs: Coefficients) -> CaseFlags:
    """Exact coefficient cases."""
    a1, a2, b1, b2 = coeffs.alpha1, coeffs.alpha2, coeffs.beta1, coeffs.beta2
    value = _sigma_or_none(coeffs)
    hirota = a2 == 0 and b1 == 0 and b2 == 0
    covmom = a1 == 3 * b1 and a2 == 3 * b2
    return CaseFlags(
        momentum_ok=a2 == b2,
        energy_ok=a2 == 0 and b2 == 0,
        covmass_ok=a1 == 2 * b1 and a2 == 2 * b2,
        covmom_ok=covmom,
        twist_ok=hirota,
        sech_case=a2 + b2 == 0,
        airy_degenerate=a1 + b1 == 0 and a2 + b2 == 0,
        peakon_case=value is not None and value != 0,
        hirota=hirota,
        sasa_satsuma=covmom and a2 == 0 and b2 == 0,
    )


def classify_report(coeffs: Coefficients) -> dict[str, dict]:
    """Flag name mapped to its value and the predicate that decides it."""
    flags = classify(coeffs)
    return {
        name: {"value": getattr(flags, name), "predicate": predicate} for name, predicate in CASE_PREDICATES.items()
    }


def rescale(spec: SolutionSpec, factor: float) -> SolutionSpec:
    """
    Image of a solution under x -> factor x, t -> factor^3 t, u -> u / factor.

    Speeds scale by factor^-2, wavenumbers by factor^-1, translations by factor and the peakon amplitude by
    factor^-1.
    """
    if factor <= 0:
        raise ValueError("Scaling factor must be positive")
    return spec.with_params(c=spec.c / factor**2, k=spec.k / factor, xi0=spec.xi0 * factor, A=spec.A / factor)
