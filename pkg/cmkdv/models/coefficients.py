from fractions import Fraction

from pydantic import BaseModel, ConfigDict, field_validator

from ..utils.numbers import format_complex, parse_complex, to_fraction


class Coefficients(BaseModel):
    """
    Complex nonlinear coefficients alpha = alpha1 + i alpha2 and beta = beta1 + i beta2 of the equation,
    with the dispersion coefficient normalized to one.

    Parameters
    ----------
    alpha1, alpha2, beta1, beta2 : Fraction
        Exact real and imaginary parts. Ints, ``"p/q"`` strings, decimal strings and floats are accepted,
        floats through their decimal representation.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha1: Fraction = Fraction(0)
    alpha2: Fraction = Fraction(0)
    beta1: Fraction = Fraction(0)
    beta2: Fraction = Fraction(0)

    @field_validator("alpha1", "alpha2", "beta1", "beta2", mode="before")
    @classmethod
    def validate_part(cls, value) -> Fraction:
        return to_fraction(value)

    @classmethod
    def from_complex(cls, alpha, beta) -> "Coefficients":
        """
        Build from two complex numbers in any form ``parse_complex`` accepts, e.g. ``"1+2i"`` or ``(1, 2)``.
        """
        alpha1, alpha2 = parse_complex(alpha)
        beta1, beta2 = parse_complex(beta)
        return cls(alpha1=alpha1, alpha2=alpha2, beta1=beta1, beta2=beta2)

    @property
    def alpha(self) -> tuple[Fraction, Fraction]:
        return self.alpha1, self.alpha2

    @property
    def beta(self) -> tuple[Fraction, Fraction]:
        return self.beta1, self.beta2

    @property
    def alpha_value(self) -> complex:
        return complex(float(self.alpha1), float(self.alpha2))

    @property
    def beta_value(self) -> complex:
        return complex(float(self.beta1), float(self.beta2))

    def scaled(self, factor) -> "Coefficients":
        """Both coefficients multiplied by a real factor."""
        factor = to_fraction(factor)
        return Coefficients(
            alpha1=self.alpha1 * factor,
            alpha2=self.alpha2 * factor,
            beta1=self.beta1 * factor,
            beta2=self.beta2 * factor,
        )

    def __str__(self) -> str:
        return f"alpha={format_complex(*self.alpha)}, beta={format_complex(*self.beta)}"


class CaseFlags(BaseModel):
    """
    Coefficient cases that decide which conservation laws and solution families exist.

    Attributes
    ----------
    momentum_ok : bool
        Im alpha = Im beta.
    energy_ok : bool
        Im alpha = Im beta = 0.
    covmass_ok : bool
        alpha = 2 beta.
    covmom_ok : bool
        alpha = 3 beta.
    twist_ok : bool
        Im alpha = 0 and beta = 0.
    sech_case : bool
        Im(alpha + beta) = 0.
    airy_degenerate : bool
        alpha + beta = 0.
    peakon_case : bool
        |alpha| = |beta| with a well-defined non-zero sigma.
    hirota : bool
        Im alpha = 0 and beta = 0.
    sasa_satsuma : bool
        alpha = 3 beta with both real.
    """

    model_config = ConfigDict(frozen=True)

    momentum_ok: bool
    energy_ok: bool
    covmass_ok: bool
    covmom_ok: bool
    twist_ok: bool
    sech_case: bool
    airy_degenerate: bool
    peakon_case: bool
    hirota: bool
    sasa_satsuma: bool


class Sigma(BaseModel):
    """Real ratio sigma with alpha - beta = -i sigma (alpha + beta)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Fraction

    def __float__(self) -> float:
        return float(self.value)


class ScaleReport(BaseModel):
    """Factors by which t and x were rescaled to normalize the dispersion coefficient."""

    model_config = ConfigDict(frozen=True)

    gamma: float
    t_scale: float
    x_scale: float
