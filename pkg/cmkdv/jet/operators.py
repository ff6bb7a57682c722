"""
Differential operators on jet polynomials: total derivatives in x and t along the equation, the Euler operator,
the homotopy inverse of the total x-derivative and degree-weighted substitution.

Operators that temporarily need higher jets than the input carries (Euler operator, homotopy) work in a widened
space and narrow the result back to the cap of the input.
"""
from fractions import Fraction
from functools import lru_cache, singledispatch
from typing import Callable

from ..errors import JetOrderOverflow, NotExact, ZeroDegreeWeight
from .point import JetPoint
from .poly import ComplexJetPoly, JetPoly
from .space import COMPONENTS, T_INDEX, X_INDEX, JetSpace


def _wide_cap(p: JetPoly) -> int:
    return max(p.cap, 2 * max(p.order, 0) + 1)


@singledispatch
def total_x_derivative(p):
    """
    Total x-derivative ``D_x p = p_x + sum_i,k u_i^(k+1) dp/du_i^(k)``.

    Raises
    ------
    JetOrderOverflow
        If ``p`` already uses jets of the cap order.
    """
    raise TypeError(f"Can not differentiate {type(p).__name__}")


@total_x_derivative.register
def _(p: JetPoly) -> JetPoly:
    if p.order >= p.cap:
        raise JetOrderOverflow(f"D_x of an order {p.order} polynomial leaves the cap {p.cap}")
    space = p.space
    ring = space.ring
    result = p.diff(X_INDEX).element
    for index in range(2, space.ngens - 2):
        if not p.uses(index):
            continue
        result = result + p.diff(index).element * ring.gens[index + 2]
    return JetPoly(result, space)


@total_x_derivative.register
def _(p: ComplexJetPoly) -> ComplexJetPoly:
    return ComplexJetPoly(total_x_derivative(p.re), total_x_derivative(p.im))


def total_x_derivatives(p: JetPoly, times: int) -> JetPoly:
    """``D_x`` applied ``times`` times."""
    for _ in range(times):
        p = total_x_derivative(p)
    return p


def evolution_rhs(alpha, beta, cap: int) -> tuple[JetPoly, JetPoly]:
    """
    Components of ``u_t = -(alpha conj(u) u u_x + beta u^2 conj(u)_x + u_xxx)``.

    Parameters
    ----------
    alpha, beta : tuple[Fraction, Fraction]
        Real and imaginary parts of the coefficients.
    cap : int
        Cap of the space holding the result.
    """
    return _evolution_rhs(tuple(alpha), tuple(beta), cap)


@lru_cache(maxsize=64)
def _evolution_rhs(alpha: tuple, beta: tuple, cap: int) -> tuple[JetPoly, JetPoly]:
    u, ux, uxxx = ComplexJetPoly.u(0, cap), ComplexJetPoly.u(1, cap), ComplexJetPoly.u(3, cap)
    ubar, ubarx = ComplexJetPoly.ubar(0, cap), ComplexJetPoly.ubar(1, cap)
    a = ComplexJetPoly.constant(alpha, cap)
    b = ComplexJetPoly.constant(beta, cap)
    rhs = -(a * ubar * u * ux + b * u * u * ubarx + uxxx)
    return rhs.re, rhs.im


@lru_cache(maxsize=64)
def _rhs_jets(alpha: tuple, beta: tuple, cap: int) -> tuple[tuple[JetPoly, JetPoly], ...]:
    # D_x^k of both right-hand sides for every k that stays inside the cap
    current = _evolution_rhs(alpha, beta, cap)
    jets = [current]
    for _ in range(cap - 3):
        current = (total_x_derivative(current[0]), total_x_derivative(current[1]))
        jets.append(current)
    return tuple(jets)


@singledispatch
def total_t_derivative(p, coeffs):
    """
    Total t-derivative along solutions: ``D_t p = p_t + sum_i,k D_x^k(u_i,t) dp/du_i^(k)``.

    Parameters
    ----------
    p : JetPoly or ComplexJetPoly
        Polynomial to differentiate.
    coeffs : Coefficients
        Anything with exact ``alpha`` and ``beta`` pairs.

    Raises
    ------
    JetOrderOverflow
        If ``order(p) + 3`` exceeds the cap.
    """
    raise TypeError(f"Can not differentiate {type(p).__name__}")


@total_t_derivative.register
def _(p: JetPoly, coeffs) -> JetPoly:
    if p.order + 3 > p.cap:
        raise JetOrderOverflow(f"D_t of an order {p.order} polynomial leaves the cap {p.cap}")
    if p.order < 0:
        return p.diff(T_INDEX)
    jets = _rhs_jets(tuple(coeffs.alpha), tuple(coeffs.beta), p.cap)
    result = p.diff(T_INDEX)
    for order in range(p.order + 1):
        for component in COMPONENTS:
            derivative = p.partial(component, order)
            if not derivative.is_zero:
                result = result + derivative * jets[order][component - 1]
    return result


@total_t_derivative.register
def _(p: ComplexJetPoly, coeffs) -> ComplexJetPoly:
    return ComplexJetPoly(total_t_derivative(p.re, coeffs), total_t_derivative(p.im, coeffs))


def _euler_wide(p: JetPoly, component: int) -> JetPoly:
    wide = p.widen(_wide_cap(p))
    result = JetPoly.zero(wide.cap)
    for order in range(max(p.order, 0) + 1):
        term = wide.partial(component, order)
        if term.is_zero:
            continue
        term = total_x_derivatives(term, order)
        result = result + (term if order % 2 == 0 else -term)
    return result


def euler_operator(p: JetPoly, component: int) -> JetPoly:
    """
    Variational derivative ``E_i(p) = sum_k (-D_x)^k dp/du_i^(k)``.

    Raises
    ------
    JetOrderOverflow
        If the result does not fit the cap of ``p``.
    """
    return _euler_wide(p, component).narrow(p.cap)


def is_total_x_derivative(p: JetPoly) -> bool:
    """Whether both Euler operators annihilate ``p``."""
    return all(_euler_wide(p, component).is_zero for component in COMPONENTS)


def _integrate_x(p: JetPoly) -> JetPoly:
    # antiderivative in x of a polynomial free of jets
    terms = {}
    for monomial, coefficient in p.terms.items():
        power = monomial[X_INDEX]
        shifted = monomial[:X_INDEX] + (power + 1,) + monomial[X_INDEX + 1 :]
        terms[shifted] = coefficient / (power + 1)
    return JetPoly.from_terms(terms, p.cap)


def scale_substitute(p: JetPoly, weight: Callable[[int], Fraction]) -> JetPoly:
    """
    Multiply each monomial by ``weight(d)`` where ``d`` is its total degree in the jet variables.

    Raises
    ------
    ZeroDegreeWeight
        If ``weight`` divides by zero on a monomial of degree zero.
    """

    def monomial_weight(monomial):
        degree = sum(monomial[2:])
        try:
            return weight(degree)
        except ZeroDivisionError as exc:
            raise ZeroDegreeWeight(f"Weight undefined for jet-degree {degree}") from exc

    return p.map_coefficients(monomial_weight)


def inverse_degree(degree: int) -> Fraction:
    """Homotopy weight ``1/d`` of the integral over the scaling parameter."""
    return Fraction(1, degree)


def invert_total_x_derivative(p: JetPoly) -> JetPoly:
    """
    Find ``q`` with ``D_x q = p`` by the homotopy operator; the jet part of ``q`` vanishes at ``u = 0``.

    Raises
    ------
    NotExact
        If ``p`` is not a total x-derivative.
    """
    if not is_total_x_derivative(p):
        raise NotExact("Polynomial is not a total x-derivative")
    parts = p.jet_degree_parts()
    pure = parts.pop(0, JetPoly.zero(p.cap))
    jet_part = sum(parts.values(), JetPoly.zero(p.cap))
    wide = jet_part.widen(_wide_cap(jet_part))
    integrand = JetPoly.zero(wide.cap)
    for component in COMPONENTS:
        for order in range(1, max(wide.order, 0) + 1):
            derivative = wide.partial(component, order)
            if derivative.is_zero:
                continue
            for lower in range(order):
                shifted = total_x_derivatives(derivative, order - 1 - lower)
                if (order - 1 - lower) % 2:
                    shifted = -shifted
                integrand = integrand + JetPoly.jet(component, lower, wide.cap) * shifted
    result = scale_substitute(integrand, inverse_degree)
    return result.narrow(p.cap) + _integrate_x(pure)


def _top_linear_part(p: JetPoly, top: int) -> tuple[JetPoly, JetPoly] | None:
    # coefficients g_i of the part of p linear in u_i^(top), None if some term is nonlinear in them
    first, second = JetSpace.index(1, top), JetSpace.index(2, top)
    space = p.space
    g = {1: {}, 2: {}}
    for monomial, coefficient in p.element.items():
        power = monomial[first] + monomial[second]
        if power > 1:
            return None
        if power == 1:
            component = 1 if monomial[first] else 2
            index = first if component == 1 else second
            reduced = monomial[:index] + (0,) + monomial[index + 1 :]
            g[component][reduced] = coefficient
    return tuple(JetPoly(space.ring.from_dict(g[c]), space) for c in COMPONENTS)


def reduce_order(p: JetPoly) -> JetPoly:
    """
    Lowest-order representative of ``p`` modulo total x-derivatives.

    Repeatedly removes a total derivative ``D_x G`` that cancels the top-order jets while those enter linearly
    and their coefficients are a gradient in the next lower jets.
    """
    while p.order >= 1:
        top = p.order
        linear = _top_linear_part(p, top)
        if linear is None:
            break
        below = (JetSpace.index(1, top - 1), JetSpace.index(2, top - 1))
        candidate = JetPoly.jet(1, top - 1, p.cap) * linear[0] + JetPoly.jet(2, top - 1, p.cap) * linear[1]

        def line_weight(monomial):
            return Fraction(1, monomial[below[0]] + monomial[below[1]])

        primitive = candidate.map_coefficients(line_weight)
        if primitive.diff(below[0]) != linear[0] or primitive.diff(below[1]) != linear[1]:
            break
        reduced = p - total_x_derivative(primitive)
        if reduced.order >= top:
            break
        p = reduced
    return p


def evaluate_at(p, point: JetPoint):
    """
    Value of a (complex) jet polynomial at a jet point.

    Raises
    ------
    MissingGenerator
        If ``p`` needs jets of higher order than the point carries.
    """
    values = point.generator_values()
    if isinstance(p, JetPoly) and p.cap != point.cap:
        p = p.fit(max(point.cap, p.order, 0))
    return p.evaluate(values)
