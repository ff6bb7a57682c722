import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Family(Enum):
    """
    Closed-form travelling-wave families.

    Attributes
    ----------
    SOLITARY1, SOLITARY2 : str
        Solitary waves of the real-alpha, zero-beta case with a free angle theta.
    SOLITARY3, SOLITARY4 : str
        Solitary waves of the real alpha + beta case.
    CUSP : str
        Exponential wave with a cusp at its crest, alpha + beta = 0.
    SECH : str
        The familiar sech solitary wave.
    KINK1, KINK2 : str
        Kinks of the real alpha + beta and real-alpha, zero-beta cases.
    LP_SOLITON : str
        Sech soliton with a linear phase.
    PEAKON : str
        Peakon with a linear phase and a cusp in the amplitude.
    LP_KINK : str
        Kink with a linear phase.
    """

    SOLITARY1 = "Solitary1"
    SOLITARY2 = "Solitary2"
    SOLITARY3 = "Solitary3"
    SOLITARY4 = "Solitary4"
    CUSP = "Cusp"
    SECH = "Sech"
    KINK1 = "Kink1"
    KINK2 = "Kink2"
    LP_SOLITON = "LPSoliton"
    PEAKON = "Peakon"
    LP_KINK = "LPKink"

    @classmethod
    def parse(cls, value: "Family | str") -> "Family":
        if isinstance(value, Family):
            return value
        for family in cls:
            if value.lower() in (family.value.lower(), family.name.lower()):
                return family
        raise ValueError(f"Unknown solution family {value}")

    @property
    def is_kink(self) -> bool:
        return self in (Family.KINK1, Family.KINK2, Family.LP_KINK)

    @property
    def has_cusp(self) -> bool:
        return self in (Family.CUSP, Family.PEAKON)

    @property
    def has_linear_phase(self) -> bool:
        return self in (Family.LP_SOLITON, Family.PEAKON, Family.LP_KINK)


SMOOTH_FAMILIES = [family for family in Family if not family.has_cusp]


class SolutionSpec(BaseModel):
    """
    A solution family with its parameters.

    Parameters
    ----------
    family : Family
        Closed-form family.
    c : float
        Speed.
    phi : float, optional
        Phase angle, default 0.
    theta : float, optional
        Angle of the Solitary1/Solitary2 offset, default 0.
    Theta : float, optional
        Shape parameter of Solitary1, Solitary3, Cusp and Kink2, default 0.
    k : float, optional
        Wavenumber of the linear phase, default 0.
    A : float, optional
        Peakon amplitude, must be positive, default 1.
    xi0 : float, optional
        Translation of the crest or inflection, default 0.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    family: Family
    c: float
    phi: float = 0.0
    theta: float = 0.0
    Theta: float = 0.0
    k: float = 0.0
    A: float = Field(default=1.0, gt=0)
    xi0: float = 0.0

    @field_validator("family", mode="before")
    @classmethod
    def validate_family(cls, value) -> Family:
        return Family.parse(value)

    def with_params(self, **params) -> "SolutionSpec":
        return self.model_copy(update=params)

    @property
    def params(self) -> dict[str, float]:
        return {key: value for key, value in self.model_dump().items() if key != "family"}


class AsymptoticPair(BaseModel):
    """
    Limits of a solution for x to minus and plus infinity.

    Attributes
    ----------
    u_minus, u_plus : complex
        Limits; for linear-phase kinks these are the values at t = 0, x = -+infinity of the rotating background.
    decay_rate : float or None
        Exponential approach rate, None for algebraic approach.
    algebraic : bool
        Whether the approach is algebraic, O(1/x^2).
    phase_converges : bool
        Whether arg u has limits; false for linear-phase kinks with k != 0.
    """

    model_config = ConfigDict(frozen=True)

    u_minus: complex
    u_plus: complex
    decay_rate: float | None = None
    algebraic: bool = False
    phase_converges: bool = True

    @property
    def modulus(self) -> tuple[float, float]:
        return abs(self.u_minus), abs(self.u_plus)

    def phase_offsets(self, phi: float) -> tuple[float, float]:
        """Phases of the limits relative to ``phi`` in (-pi, pi]."""

        def offset(value: complex) -> float:
            angle = math.atan2(value.imag, value.real) - phi
            return math.atan2(math.sin(angle), math.cos(angle))

        return offset(self.u_minus), offset(self.u_plus)
