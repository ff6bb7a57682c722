from typing import Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .space import JET_ORDER_CAP


class JetPoint(BaseModel):
    """
    Numeric values of t, x and the jets of u1, u2.

    Attributes
    ----------
    t : float
        Time value.
    x : float
        Space value.
    values : tuple[float, ...]
        Jet values interleaved by order: u1, u2, u1_x, u2_x, ... of length ``2 * (cap + 1)``.
    order : int
        Highest derivative order carried by ``values``; entries above it are placeholders.
    cap : int
        Derivative-order cap of the point.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    t: float = 0.0
    x: float = 0.0
    values: tuple[float, ...]
    order: int = Field(ge=0)
    cap: int = Field(default=JET_ORDER_CAP, ge=0)

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.values) != 2 * (self.cap + 1):
            raise ValueError(f"Jet point of cap {self.cap} needs {2 * (self.cap + 1)} values")
        if self.order > self.cap:
            raise ValueError("Jet point order exceeds its cap")
        return self

    @classmethod
    def from_components(
        cls,
        u1: Sequence[float],
        u2: Sequence[float],
        t: float = 0.0,
        x: float = 0.0,
        cap: int = JET_ORDER_CAP,
    ) -> "JetPoint":
        """
        Build from the derivative lists ``[u1, u1_x, ...]`` and ``[u2, u2_x, ...]`` of equal length.
        """
        if len(u1) != len(u2):
            raise ValueError("Both components need the same number of derivatives")
        if not u1:
            raise ValueError("At least the values of u1 and u2 are needed")
        order = len(u1) - 1
        values = [0.0] * (2 * (cap + 1))
        for k, (first, second) in enumerate(zip(u1, u2)):
            values[2 * k] = float(first)
            values[2 * k + 1] = float(second)
        return cls(t=t, x=x, values=tuple(values), order=order, cap=cap)

    def generator_values(self) -> list[float | None]:
        """Values in generator order with ``None`` for jets above ``order``."""
        jets = [value if index // 2 <= self.order else None for index, value in enumerate(self.values)]
        return [self.t, self.x, *jets]
