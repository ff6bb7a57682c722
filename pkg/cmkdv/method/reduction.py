"""
Travelling-wave reduction u = a + |b| f(x - ct) with a real profile f.

The profile obeys (A + B f + C f^2) f' + f''' = 0, its once-integrated form and its first integral. Solitary
profiles come from four branches of the first integral, kinks from the tanh profile. The linear-phase reduction
u = exp(i(kx + wt)) f(x - ct) gives a pair of real ODEs with two solution branches.
"""
import math
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy as sp
from pydantic import BaseModel, ConfigDict

from ..errors import BranchDomain, NoBranch
from ..jet import JetPoly
from ..models import Coefficients
from ..utils.numbers import to_fraction
from .equation import sigma

REALNESS_TOLERANCE = 1e-12
LINEAR_PHASE_TOLERANCE = 1e-10


class Branch(Enum):
    """
    Branches of the solitary first integral and the kink profile.

    Attributes
    ----------
    SECH_LIKE : str
        -6A / (sqrt(B^2 - 6AC) cosh(sqrt(-A) xi) + B), A != 0 and B or C != 0.
    EXPONENTIAL : str
        exp(+-sqrt(-A) xi), A != 0, B = C = 0.
    RATIONAL : str
        -2B / ((B^2 / 6) xi^2 + C), A = 0, B != 0.
    POLE : str
        +-sqrt(-6 / C) / xi, A = B = 0, C != 0.
    KINK : str
        sqrt(-3A / C) tanh(sqrt(A / 2) xi).
    """

    SECH_LIKE = "sech_like"
    EXPONENTIAL = "exponential"
    RATIONAL = "rational"
    POLE = "pole"
    KINK = "kink"


class RealnessCase(Enum):
    """Coefficient cases in which A, B, C are real."""

    IMAGINARY_OFFSET = "a2 != 0, beta1 = alpha2 = beta2 = 0"
    REAL_OFFSET = "a2 = 0, alpha2 + beta2 = 0"
    KINK_IMAGINARY_OFFSET = "a1 = 0, a2 != 0, beta1 = alpha2 = beta2 = 0"
    KINK_ZERO_OFFSET = "a1 = a2 = 0, alpha2 + beta2 = 0"


class ABC(BaseModel):
    """Coefficients of the profile equation and whether all three are real."""

    model_config = ConfigDict(frozen=True)

    A: complex
    B: complex
    C: complex
    real: bool

    @property
    def values(self) -> tuple[float, float, float]:
        return self.A.real, self.B.real, self.C.real


class KinkIntegral(BaseModel):
    """Outcome of the kink conditions B = E = 0, D = 3A^2 / (2C), -3A / C > 0."""

    model_config = ConfigDict(frozen=True)

    D: float
    E: float
    f0: float | None
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


class LinearPhaseBranch(BaseModel):
    """
    Branch of the linear-phase system that the coefficients select.

    Attributes
    ----------
    branch : int
        1 for f'' - (c + 3k^2) f + alpha1 f^3 / 3 = 0, 2 for f' -+ sqrt(c + 3k^2) f = 0.
    w : float
        Frequency -(3c + 8k^2) k.
    sign : int or None
        Sign of f'/f on branch 2.
    decay_rate : float or None
        sqrt(c + 3k^2) when real.
    sigma : float or None
        Ratio sigma on branch 2; then k^2 = c / (sigma^2 - 3).
    """

    model_config = ConfigDict(frozen=True)

    branch: int
    w: float
    sign: int | None = None
    decay_rate: float | None = None
    sigma: float | None = None


_xi, _A, _B, _C, _sign, _amp = sp.symbols("xi A B C sign amp", real=True)


def _branch_expression(branch: Branch) -> sp.Expr:
    if branch is Branch.SECH_LIKE:
        return -6 * _A / (sp.sqrt(_B**2 - 6 * _A * _C) * sp.cosh(sp.sqrt(-_A) * _xi) + _B)
    if branch is Branch.EXPONENTIAL:
        return sp.exp(_sign * sp.sqrt(-_A) * _xi)
    if branch is Branch.RATIONAL:
        return -2 * _B / (_B**2 / 6 * _xi**2 + _C)
    if branch is Branch.POLE:
        return _sign * sp.sqrt(-6 / _C) / _xi
    return sp.sqrt(-3 * _A / _C) * sp.tanh(sp.sqrt(_A / 2) * _xi)


@lru_cache(maxsize=None)
def _compiled_branch(branch: Branch):
    expression = _amp * _branch_expression(branch)
    derivatives = [expression]
    for _ in range(3):
        derivatives.append(sp.diff(derivatives[-1], _xi))
    return sp.lambdify((_xi, _A, _B, _C, _sign, _amp), derivatives, modules="numpy", cse=True)


def _is_zero(value: float) -> bool:
    return value == 0


def infer_branch(A: float, B: float, C: float) -> Branch:
    """Solitary branch from exact zero tests on A, B, C."""
    if not _is_zero(A):
        return Branch.SECH_LIKE if not (_is_zero(B) and _is_zero(C)) else Branch.EXPONENTIAL
    if not _is_zero(B):
        return Branch.RATIONAL
    if not _is_zero(C):
        return Branch.POLE
    raise BranchDomain("A = B = C = 0 leaves no non-trivial profile")


def _check_domain(branch: Branch, A: float, B: float, C: float) -> None:
    if branch is Branch.SECH_LIKE and (A >= 0 or B**2 - 6 * A * C < 0):
        raise BranchDomain("Sech-like branch needs A < 0 and B^2 - 6AC >= 0")
    if branch is Branch.EXPONENTIAL and A >= 0:
        raise BranchDomain("Exponential branch needs A < 0")
    if branch is Branch.RATIONAL and B == 0:
        raise BranchDomain("Rational branch needs B != 0")
    if branch is Branch.POLE and C >= 0:
        raise BranchDomain("Pole branch needs C < 0")
    if branch is Branch.KINK and (A <= 0 or C >= 0):
        raise BranchDomain("Kink profile needs A > 0 and C < 0")


def profile_jets(
    branch: Branch, A: float, B: float, C: float, xi, sign: float = 1.0, amplitude: float = 1.0
) -> np.ndarray:
    """
    Profile of a branch and its first three derivatives, stacked along the first axis.

    Raises
    ------
    BranchDomain
        If the coefficients lie outside the real domain of the branch.
    """
    _check_domain(branch, A, B, C)
    xi = np.asarray(xi, dtype=float)
    values = _compiled_branch(branch)(xi, A, B, C, sign, amplitude)
    return np.stack([np.broadcast_to(np.asarray(value, dtype=float), xi.shape) for value in values])


def profile_solitary(A: float, B: float, C: float, xi, branch: Branch | None = None, sign: float = 1.0):
    """
    Solitary profile f(xi) with the crest at xi = 0.

    Parameters
    ----------
    A, B, C : float
        Real coefficients of the profile equation.
    xi : float or numpy.ndarray
        Travelling coordinate.
    branch : Branch, optional
        Branch to use; inferred from exact zero tests when missing.
    sign : float, optional
        The +- of the exponential and pole branches, default +1.
    """
    branch = branch or infer_branch(A, B, C)
    if branch is Branch.KINK:
        raise BranchDomain("Use profile_kink for kinks")
    return profile_jets(branch, A, B, C, xi, sign)[0]


def profile_kink(A: float, C: float, xi):
    """Kink profile sqrt(-3A/C) tanh(sqrt(A/2) xi) with limits -+f0."""
    return profile_jets(Branch.KINK, A, 0.0, C, xi)[0]


def ode_residuals(f, f1, f2, f3, A, B, C, D=0.0, E=0.0) -> tuple:
    """
    Residuals of the third-order profile equation, its integrated form and its first integral.

    Returns
    -------
    tuple
        (A + Bf + Cf^2) f' + f''', E/2 + Af + Bf^2/2 + Cf^3/3 + f'' and
        D + Ef + Af^2 + Bf^3/3 + Cf^4/6 + f'^2.
    """
    r3 = (A + B * f + C * f**2) * f1 + f3
    r2 = E / 2 + A * f + B * f**2 / 2 + C * f**3 / 3 + f2
    r1 = D + E * f + A * f**2 + B * f**3 / 3 + C * f**4 / 6 + f1**2
    return r3, r2, r1


def abc(coeffs: Coefficients, a: complex, bmag: float, c: float) -> ABC:
    """
    A = alpha |a|^2 + beta a^2 - c, B = (alpha (a + conj(a)) + 2 beta a) |b|, C = (alpha + beta) |b|^2.
    """
    if bmag < 0:
        raise ValueError("|b| must be non-negative")
    alpha, beta = coeffs.alpha_value, coeffs.beta_value
    a = complex(a)
    A = alpha * abs(a) ** 2 + beta * a**2 - c
    B = (alpha * (a + a.conjugate()) + 2 * beta * a) * bmag
    C = (alpha + beta) * bmag**2
    scale = max(abs(A), abs(B), abs(C), 1.0)
    real = all(abs(value.imag) <= REALNESS_TOLERANCE * scale for value in (A, B, C))
    return ABC(A=A, B=B, C=C, real=real)


def realness_cases(coeffs: Coefficients, a: complex) -> list[RealnessCase]:
    """Realness cases that hold for the coefficients and the offset a."""
    a = complex(a)
    hirota = coeffs.alpha2 == 0 and coeffs.beta1 == 0 and coeffs.beta2 == 0
    real_sum = coeffs.alpha2 + coeffs.beta2 == 0
    cases = []
    if a.imag != 0 and hirota:
        cases.append(RealnessCase.IMAGINARY_OFFSET)
    if a.imag == 0 and real_sum:
        cases.append(RealnessCase.REAL_OFFSET)
    if a.real == 0 and a.imag != 0 and hirota:
        cases.append(RealnessCase.KINK_IMAGINARY_OFFSET)
    if a == 0 and real_sum:
        cases.append(RealnessCase.KINK_ZERO_OFFSET)
    return cases


def kink_conditions(coefficients: ABC | tuple, D: float, E: float) -> KinkIntegral:
    """Check B = E = 0 and D = 3A^2 / (2C) and return f0 = sqrt(-3A / C)."""
    A, B, C = coefficients.values if isinstance(coefficients, ABC) else coefficients
    violations = []
    if B != 0:
        violations.append("B=0 violated")
    if E != 0:
        violations.append("E=0 violated")
    f0 = None
    if C == 0:
        violations.append("C!=0 violated")
    else:
        if not math.isclose(D, 1.5 * A**2 / C, rel_tol=1e-12, abs_tol=1e-14):
            violations.append("D=3A^2/(2C) violated")
        if -3 * A / C > 0:
            f0 = math.sqrt(-3 * A / C)
        else:
            violations.append("-3A/C>0 violated")
    return KinkIntegral(D=D, E=E, f0=f0, violations=violations)


def kink_quartic_defect(A, C) -> JetPoly:
    """
    (6/C)(D + A f^2 + C f^4 / 6) - (f^2 - f0^2)^2 with D = 3A^2 / (2C) and f0^2 = -3A / C, as an exact
    polynomial in f (carried by u1); it is the zero polynomial.
    """
    A, C = to_fraction(A), to_fraction(C)
    if C == 0:
        raise BranchDomain("Kink quartic needs C != 0")
    f = JetPoly.jet(1, 0)
    D = Fraction(3, 2) * A**2 / C
    f0_squared = -3 * A / C
    quartic = (D + A * f**2 + C / 6 * f**4) * (6 / C)
    return quartic - (f**2 - f0_squared) ** 2


class ReducedProfile(Enum):
    """
    Profiles u = a + |b| f(xi) with real f and their coefficient cases.

    Attributes
    ----------
    RATIONAL_REAL : str
        f = -12 a / (|b| (2c xi^2 + 3)), a = sqrt(c / (alpha1 + beta1)), alpha2 + beta2 = 0.
    COSH_REAL : str
        Sech-like branch with a = sqrt(c / (alpha1 + beta1)) tanh(Theta), alpha2 + beta2 = 0.
    EXP_CUSP : str
        f = exp(-sqrt(c) |xi|) / |b|, a = sinh(Theta), alpha + beta = 0.
    RATIONAL_COMPLEX : str
        Rational branch with a = sqrt(c / alpha1) exp(i theta), alpha2 = beta1 = beta2 = 0.
    COSH_COMPLEX : str
        Sech-like branch with a = sqrt(c / alpha1) tanh(Theta) exp(i theta), alpha2 = beta1 = beta2 = 0.
    POLE : str
        f = +-sqrt(-6 / alpha1) / (|b| xi), a = i sqrt(c / alpha1), alpha1 < 0, c < 0.
    KINK_IMAGINARY : str
        Kink with a = i sqrt(c / alpha1) tanh(Theta), alpha2 = beta1 = beta2 = 0.
    KINK_ZERO : str
        Kink with a = 0, alpha2 + beta2 = 0.
    """

    RATIONAL_REAL = "rational_real"
    COSH_REAL = "cosh_real"
    EXP_CUSP = "exp_cusp"
    RATIONAL_COMPLEX = "rational_complex"
    COSH_COMPLEX = "cosh_complex"
    POLE = "pole"
    KINK_IMAGINARY = "kink_imaginary"
    KINK_ZERO = "kink_zero"

    @property
    def is_kink(self) -> bool:
        return self in (ReducedProfile.KINK_IMAGINARY, ReducedProfile.KINK_ZERO)


class ReducedWave(BaseModel):
    """A reduced profile instantiated for coefficients and parameters."""

    model_config = ConfigDict(frozen=True)

    profile: ReducedProfile
    branch: Branch
    a: complex
    bmag: float
    c: float
    coefficients: ABC
    D: float
    E: float
    sign: float = 1.0
    amplitude: float = 1.0
    singular: bool = False

    def jets(self, xi) -> np.ndarray:
        """f, f', f'', f''' at xi; one-sided away from the crest of the cusp profile."""
        A, B, C = self.coefficients.values
        xi = np.asarray(xi, dtype=float)
        if self.profile is ReducedProfile.EXP_CUSP:
            right = profile_jets(self.branch, A, B, C, xi, -1.0, self.amplitude)
            left = profile_jets(self.branch, A, B, C, xi, 1.0, self.amplitude)
            return np.where(xi >= 0, right, left)
        return profile_jets(self.branch, A, B, C, xi, self.sign, self.amplitude)

    def residuals(self, xi) -> tuple:
        f, f1, f2, f3 = self.jets(xi)
        A, B, C = self.coefficients.values
        return ode_residuals(f, f1, f2, f3, A, B, C, self.D, self.E)

    def wave_residual(self, coeffs: Coefficients, xi) -> np.ndarray:
        """Residual of -cU' + alpha conj(U) U U' + beta U^2 conj(U)' + U''' for U = a + |b| f."""
        f, f1, _, f3 = self.jets(xi)
        U, U1, U3 = self.a + self.bmag * f, self.bmag * f1, self.bmag * f3
        alpha, beta = coeffs.alpha_value, coeffs.beta_value
        return -self.c * U1 + alpha * np.conj(U) * U * U1 + beta * U**2 * np.conj(U1) + U3


def reduced_wave(
    profile: ReducedProfile,
    coeffs: Coefficients,
    c: float,
    Theta: float = 0.0,
    theta: float = 0.0,
    bmag: float = 1.0,
    sign: float = 1.0,
) -> ReducedWave:
    """
    Instantiate a reduced profile.

    Raises
    ------
    BranchDomain
        If the coefficients or parameters do not belong to the profile's case.
    """
    a1, s1 = float(coeffs.alpha1), float(coeffs.alpha1 + coeffs.beta1)
    real_sum = coeffs.alpha2 + coeffs.beta2 == 0
    hirota = coeffs.alpha2 == 0 and coeffs.beta1 == 0 and coeffs.beta2 == 0
    if bmag <= 0:
        raise BranchDomain("|b| must be positive")

    def require(condition: bool, message: str) -> None:
        if not condition:
            raise BranchDomain(f"{profile.value}: {message} violated")

    rotation = complex(math.cos(theta), math.sin(theta))
    singular = False
    amplitude = 1.0
    if profile in (ReducedProfile.RATIONAL_REAL, ReducedProfile.COSH_REAL):
        require(real_sum and s1 != 0, "alpha2+beta2=0, alpha1+beta1!=0")
        require(c / s1 > 0, "c/(alpha1+beta1)>0")
        scale = math.sqrt(c / s1)
        if profile is ReducedProfile.RATIONAL_REAL:
            a, branch, singular = complex(scale), Branch.RATIONAL, c < 0
        else:
            a, branch = complex(scale * math.tanh(Theta)), Branch.SECH_LIKE
    elif profile is ReducedProfile.EXP_CUSP:
        require(coeffs.alpha1 + coeffs.beta1 == 0 and real_sum, "alpha+beta=0")
        require(c > 0, "c>0")
        a, branch, amplitude = complex(math.sinh(Theta)), Branch.EXPONENTIAL, 1 / bmag
    elif profile in (ReducedProfile.RATIONAL_COMPLEX, ReducedProfile.COSH_COMPLEX):
        require(hirota and a1 != 0, "alpha2=beta1=beta2=0, alpha1!=0")
        require(c / a1 > 0, "c/alpha1>0")
        scale = math.sqrt(c / a1)
        if profile is ReducedProfile.RATIONAL_COMPLEX:
            require(math.cos(theta) != 0, "cos(theta)!=0")
            a, branch, singular = scale * rotation, Branch.RATIONAL, c < 0
        else:
            a, branch = scale * math.tanh(Theta) * rotation, Branch.SECH_LIKE
    elif profile is ReducedProfile.POLE:
        require(hirota and a1 < 0, "alpha2=beta1=beta2=0, alpha1<0")
        require(c < 0, "c<0")
        a, branch, singular = 1j * math.sqrt(c / a1), Branch.POLE, True
    elif profile is ReducedProfile.KINK_IMAGINARY:
        require(hirota and a1 < 0, "alpha2=beta1=beta2=0, alpha1<0")
        require(c < 0, "c<0")
        a, branch = 1j * math.sqrt(c / a1) * math.tanh(Theta), Branch.KINK
    else:
        require(real_sum and s1 < 0, "alpha2+beta2=0, alpha1+beta1<0")
        require(c < 0, "c<0")
        a, branch = 0j, Branch.KINK
    coefficients = abc(coeffs, a, bmag, c)
    if not coefficients.real:
        raise BranchDomain(f"{profile.value}: A, B, C are not real")
    A, B, C = coefficients.values
    # exact cancellations that floating point may leave behind
    if branch in (Branch.RATIONAL, Branch.POLE):
        A = 0.0
    if branch in (Branch.EXPONENTIAL, Branch.POLE, Branch.KINK):
        B = 0.0
    if branch is Branch.EXPONENTIAL:
        C = 0.0
    coefficients = ABC(A=A, B=B, C=C, real=True)
    D = 1.5 * A**2 / C if branch is Branch.KINK else 0.0
    _check_domain(branch, A, B, C)
    return ReducedWave(
        profile=profile,
        branch=branch,
        a=a,
        bmag=bmag,
        c=c,
        coefficients=coefficients,
        D=D,
        E=0.0,
        sign=sign,
        amplitude=amplitude,
        singular=singular,
    )


def linear_phase_residuals(jets, coeffs: Coefficients, c: float, k: float, w: float) -> tuple:
    """
    Residuals of the real pair
    f''' + ((alpha1 + beta1) f^2 - c - 3k^2) f' + (beta2 - alpha2) k f^3 and
    3k f'' + (alpha2 + beta2) f^2 f' + (w - k^3) f + (alpha1 - beta1) k f^3.

    Parameters
    ----------
    jets : array-like
        f, f', f'', f''' stacked along the first axis.
    """
    f, f1, f2, f3 = jets
    a1, a2, b1, b2 = (float(value) for value in (coeffs.alpha1, coeffs.alpha2, coeffs.beta1, coeffs.beta2))
    r1 = f3 + ((a1 + b1) * f**2 - c - 3 * k**2) * f1 + (b2 - a2) * k * f**3
    r2 = 3 * k * f2 + (a2 + b2) * f**2 * f1 + (w - k**3) * f + (a1 - b1) * k * f**3
    return r1, r2


def linear_phase_branch(coeffs: Coefficients, c: float, k: float) -> LinearPhaseBranch:
    """
    Branch of the linear-phase system for the coefficients, speed and wavenumber.

    Raises
    ------
    NoBranch
        If neither branch applies.
    """
    w = -(3 * c + 8 * k**2) * k
    kappa_squared = c + 3 * k**2
    decay_rate = math.sqrt(kappa_squared) if kappa_squared >= 0 else None
    if coeffs.alpha2 == 0 and coeffs.beta1 == 0 and coeffs.beta2 == 0 and coeffs.alpha1 != 0:
        return LinearPhaseBranch(branch=1, w=w, decay_rate=decay_rate)
    a1, a2, b1, b2 = (float(value) for value in (coeffs.alpha1, coeffs.alpha2, coeffs.beta1, coeffs.beta2))
    same_modulus = coeffs.alpha1**2 + coeffs.alpha2**2 == coeffs.beta1**2 + coeffs.beta2**2
    if same_modulus and (coeffs.alpha1, coeffs.alpha2) != (0, 0) and decay_rate is not None:
        scale = max(abs(a1) + abs(a2) + abs(b1) + abs(b2), 1.0) * max(decay_rate, abs(k), 1.0)
        for sign in (1, -1):
            first = sign * decay_rate * (a1 + b1) - (a2 - b2) * k
            second = sign * decay_rate * (a2 + b2) + (a1 - b1) * k
            if abs(first) <= LINEAR_PHASE_TOLERANCE * scale and abs(second) <= LINEAR_PHASE_TOLERANCE * scale:
                value = float(sigma(coeffs).value)
                return LinearPhaseBranch(branch=2, w=w, sign=sign, decay_rate=decay_rate, sigma=value)
    raise NoBranch(f"No linear-phase branch for {coeffs} with c={c}, k={k}")


def linear_phase_profile(branch: LinearPhaseBranch, coeffs: Coefficients, xi, amplitude: float = 1.0) -> np.ndarray:
    """
    Profile jets of a linear-phase branch: the sech soliton on branch 1, the exponential on branch 2.
    """
    if branch.decay_rate is None:
        raise BranchDomain("Linear-phase profile needs c + 3k^2 >= 0")
    kappa = branch.decay_rate
    if branch.branch == 1:
        a1 = float(coeffs.alpha1)
        A, C = -(kappa**2), a1
        return profile_jets(Branch.SECH_LIKE, A, 0.0, C, xi)
    return profile_jets(Branch.EXPONENTIAL, -(kappa**2), 0.0, 0.0, xi, branch.sign, amplitude)
