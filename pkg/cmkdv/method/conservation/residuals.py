"""
Multiplier identities: the adjoint-symmetry determining equation, the Helmholtz conditions, the link
Q = dT/du1 + i dT/du2 between densities and multipliers, and density reconstruction by the homotopy formula.
"""
from math import comb

from ...errors import NotVariational
from ...jet import (
    ComplexJetPoly,
    JetPoly,
    euler_operator,
    inverse_degree,
    jet_name,
    reduce_order,
    scale_substitute,
    total_t_derivative,
    total_x_derivative,
    total_x_derivatives,
)
from ...models import Coefficients

HELMHOLTZ_ORDERS = (2, 4)


def determining_residual(q: ComplexJetPoly, coeffs: Coefficients) -> ComplexJetPoly:
    """
    D_t Q + (2 beta - alpha) u u_x conj(Q) + (conj(alpha) - 2 conj(beta)) conj(u) u_x Q
    + conj(alpha) conj(u) u D_x Q + beta u^2 D_x conj(Q) + D_x^3 Q.

    Zero exactly when Q is an adjoint-symmetry of the equation.
    """
    cap = q.cap
    alpha = ComplexJetPoly.constant(coeffs.alpha, cap)
    beta = ComplexJetPoly.constant(coeffs.beta, cap)
    u, ux, ubar = ComplexJetPoly.u(0, cap), ComplexJetPoly.u(1, cap), ComplexJetPoly.ubar(0, cap)
    qx = total_x_derivative(q)
    return (
        total_t_derivative(q, coeffs)
        + (2 * beta - alpha) * u * ux * q.conj()
        + (alpha.conj() - 2 * beta.conj()) * ubar * ux * q
        + alpha.conj() * ubar * u * qx
        + beta * u * u * qx.conj()
        + total_x_derivative(total_x_derivative(qx))
    )


def helmholtz_residuals(q: ComplexJetPoly, order: int | None = None) -> dict[str, JetPoly]:
    """
    Self-adjointness of the Frechet derivative of (Q1, Q2).

    For components a, b and k = 0..order the residual is
    dQa/dub^(k) - sum_{j>=k} (-1)^j C(j, k) D_x^(j-k) dQb/dua^(j).

    Parameters
    ----------
    q : ComplexJetPoly
        Candidate multiplier.
    order : {2, 4}, optional
        Order of the system; the smallest one covering Q by default.

    Returns
    -------
    dict[str, JetPoly]
        Residuals keyed ``"dQa/d<jet>"``, computed in a widened space; all zero iff Q is variational.
    """
    if order is None:
        order = next((value for value in HELMHOLTZ_ORDERS if value >= q.order), q.order)
    if q.order > order:
        raise ValueError(f"Multiplier of order {q.order} does not fit the order {order} system")
    cap = max(q.cap, 2 * order + 1)
    components = {1: q.re.widen(cap), 2: q.im.widen(cap)}
    residuals = {}
    for a in (1, 2):
        for b in (1, 2):
            for k in range(order + 1):
                residual = components[a].partial(b, k)
                for j in range(k, order + 1):
                    term = components[b].partial(a, j)
                    if term.is_zero:
                        continue
                    term = total_x_derivatives(term, j - k) * comb(j, k)
                    residual = residual - term if j % 2 == 0 else residual + term
                residuals[f"dQ{a}/d{jet_name(b, k)}"] = residual
    return residuals


def is_variational(q: ComplexJetPoly, order: int | None = None) -> bool:
    return all(residual.is_zero for residual in helmholtz_residuals(q, order).values())


def variational_link(density: JetPoly) -> ComplexJetPoly:
    """Multiplier dT/du1 + i dT/du2 of a real density, with d the Euler operators."""
    return ComplexJetPoly(euler_operator(density, 1), euler_operator(density, 2))


def homotopy_density(q: ComplexJetPoly, improved: bool = True) -> JetPoly:
    """
    Density T with variational_link(T) = Q.

    The basic formula integrates u1 Q1 + u2 Q2 along the scaling u -> lambda u; the improved one then removes
    total x-derivatives that carry the highest jets, giving the lowest-order representative.

    Raises
    ------
    NotVariational
        If Q fails the Helmholtz conditions.
    """
    if not is_variational(q):
        raise NotVariational("Multiplier is not a variational derivative")
    cap = q.cap
    pairing = JetPoly.jet(1, 0, cap) * q.re + JetPoly.jet(2, 0, cap) * q.im
    density = scale_substitute(pairing, inverse_degree)
    return reduce_order(density) if improved else density
