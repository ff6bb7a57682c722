"""
Conditions under which the integrated densities are conserved and finite for each solitary family, and the
trials that decide every cell numerically.

A trial is admitted when the density's coefficient case holds, finite when the integral of its modulus settles on the
nested windows [-32, 32], [-64, 64] and [-128, 128], and conserved when the flux balance of the window (with the
crest jumps of cusped waves) vanishes or shrinks as the window doubles. Densities of waves with non-zero limits decay
only algebraically, so their window integrals converge slowly instead of agreeing to tolerance.
"""
from typing import Callable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from ...models import Coefficients, Family, SolutionSpec
from ..equation import classify
from .catalog import entry
from .quantities import TABLE_QUANTITIES, QuantityId, flux_jump_rate, window_density

WINDOWS = (32.0, 64.0, 128.0)
TABLE_SPACING = 1 / 256
AGREEMENT_TOLERANCE = 1e-6
SHRINK_RATIO = 0.75
DRIFT_TOLERANCE = 1e-8
NOT_CONSERVED = "-"

HIROTA_FLAT = "Im alpha=0, beta=0, Theta=0"
REAL_FLAT = "Im alpha=Im beta=0, Theta=0"
MASS_FLAT = "Re alpha=2Re beta, Im alpha=Im beta=0, Theta=0"
MOMENTUM_FLAT = "Re alpha=3Re beta, Im alpha=Im beta=0, Theta=0"
HIROTA = "Im alpha=0, beta=0"
PEAKON_MOMENTUM = "Re alpha=-Re beta, Im alpha=Im beta"

P, E, G, M, PT, W = TABLE_QUANTITIES


def _row(momentum: str, mass: str, mom: str, twist: str) -> dict[QuantityId, str]:
    return {P: momentum, E: momentum, G: momentum, M: mass, PT: mom, W: twist}


EXPECTED_CELLS: dict[Family, dict[QuantityId, str]] = {
    Family.SOLITARY1: _row(HIROTA_FLAT, NOT_CONSERVED, NOT_CONSERVED, HIROTA),
    Family.SOLITARY2: _row(NOT_CONSERVED, NOT_CONSERVED, NOT_CONSERVED, HIROTA),
    Family.SOLITARY3: _row(REAL_FLAT, MASS_FLAT, MOMENTUM_FLAT, HIROTA),
    Family.SOLITARY4: _row(NOT_CONSERVED, NOT_CONSERVED, NOT_CONSERVED, HIROTA),
    Family.LP_SOLITON: _row(HIROTA, NOT_CONSERVED, NOT_CONSERVED, HIROTA),
    Family.PEAKON: {
        P: PEAKON_MOMENTUM,
        E: NOT_CONSERVED,
        G: NOT_CONSERVED,
        M: NOT_CONSERVED,
        PT: NOT_CONSERVED,
        W: NOT_CONSERVED,
    },
}


def _real(coeffs: Coefficients) -> bool:
    return coeffs.alpha2 == 0 and coeffs.beta2 == 0


CONDITIONS: dict[str, Callable[[Coefficients, SolutionSpec], bool]] = {
    NOT_CONSERVED: lambda coeffs, spec: False,
    HIROTA_FLAT: lambda coeffs, spec: classify(coeffs).hirota and spec.Theta == 0,
    REAL_FLAT: lambda coeffs, spec: _real(coeffs) and spec.Theta == 0,
    MASS_FLAT: lambda coeffs, spec: _real(coeffs) and coeffs.alpha1 == 2 * coeffs.beta1 and spec.Theta == 0,
    MOMENTUM_FLAT: lambda coeffs, spec: _real(coeffs) and coeffs.alpha1 == 3 * coeffs.beta1 and spec.Theta == 0,
    HIROTA: lambda coeffs, spec: classify(coeffs).hirota,
    PEAKON_MOMENTUM: lambda coeffs, spec: coeffs.alpha1 == -coeffs.beta1 and coeffs.alpha2 == coeffs.beta2,
}


def _trial(alpha, beta, family: Family, **params) -> tuple[Coefficients, SolutionSpec]:
    return Coefficients.from_complex(alpha, beta), SolutionSpec(family=family, **params)


TRIALS: dict[Family, list[tuple[Coefficients, SolutionSpec]]] = {
    Family.SOLITARY1: [
        _trial(1, 0, Family.SOLITARY1, c=1, theta=0.3, Theta=0),
        _trial(1, 0, Family.SOLITARY1, c=1, theta=0.3, Theta=1),
        _trial(2, 0, Family.SOLITARY1, c=1, theta=1.0, Theta=0.5),
    ],
    Family.SOLITARY2: [
        _trial(1, 0, Family.SOLITARY2, c=1, theta=0.3),
        _trial(2, 0, Family.SOLITARY2, c=1, theta=1.0),
    ],
    Family.SOLITARY3: [
        _trial(2, 1, Family.SOLITARY3, c=1, Theta=0),
        _trial(3, 1, Family.SOLITARY3, c=1, Theta=0),
        _trial(1, 0, Family.SOLITARY3, c=1, Theta=0),
        _trial(2, 1, Family.SOLITARY3, c=1, Theta=1),
        _trial(1, 0, Family.SOLITARY3, c=1, Theta=1),
        _trial("1+i", "1-i", Family.SOLITARY3, c=1, Theta=0),
    ],
    Family.SOLITARY4: [
        _trial(2, 1, Family.SOLITARY4, c=1),
        _trial(3, 1, Family.SOLITARY4, c=1),
        _trial(1, 0, Family.SOLITARY4, c=1),
        _trial("1+i", "1-i", Family.SOLITARY4, c=1),
    ],
    Family.LP_SOLITON: [
        _trial(1, 0, Family.LP_SOLITON, c=1, k=0.5),
        _trial(2, 0, Family.LP_SOLITON, c=1, k=-0.25),
    ],
    Family.PEAKON: [
        _trial("1+2i", "-1+2i", Family.PEAKON, c=-1),
        _trial(1, "i", Family.PEAKON, c=-1),
    ],
}


class TrialVerdict(BaseModel):
    """Outcome of one trial of a cell."""

    model_config = ConfigDict(frozen=True)

    coefficients: str
    params: dict[str, float]
    admitted: bool
    finite: bool
    conserved: bool | None
    value: complex | None = None
    drift: float | None = None
    expected: bool

    @property
    def verdict(self) -> bool:
        evolved = self.drift is None or self.drift <= DRIFT_TOLERANCE
        return self.admitted and self.finite and bool(self.conserved) and evolved

    @property
    def matches(self) -> bool:
        return self.verdict == self.expected


class TableCell(BaseModel):
    """One (family, quantity) cell with its expected condition and trials."""

    model_config = ConfigDict(frozen=True)

    family: Family
    quantity: QuantityId
    expected: str
    trials: list[TrialVerdict]

    @property
    def matches(self) -> bool:
        return all(trial.matches for trial in self.trials)


def shrinks(steps: Sequence[float], scale: float = 1.0) -> bool:
    """
    Whether magnitudes taken on doubling windows tend to zero.

    True when the last one is negligible against ``scale`` or each is at most ``SHRINK_RATIO`` times the one
    before, which an algebraic tail x^-p with p > 1.4 satisfies and a constant or 1/x tail does not.
    """
    steps = [abs(step) for step in steps]
    if steps[-1] <= AGREEMENT_TOLERANCE * max(1.0, scale):
        return True
    return all(later <= SHRINK_RATIO * earlier for earlier, later in zip(steps, steps[1:]))


def finite_value(quantity: QuantityId, spec: SolutionSpec, coeffs: Coefficients):
    """Windowed value on the widest window when the density is absolutely integrable, None when it is not."""
    x, values = window_density(quantity, spec, coeffs, WINDOWS[-1], TABLE_SPACING)
    if not np.all(np.isfinite(values)):
        return None
    magnitude = np.abs(values)
    masses = [float(np.sum(magnitude[np.abs(x) < half_width])) * TABLE_SPACING for half_width in WINDOWS]
    if not shrinks(np.diff(masses), masses[-1]):
        return None
    total = complex(np.sum(values) * TABLE_SPACING) * float(quantity.weight)
    return total if np.iscomplexobj(values) else total.real


def trial_verdict(quantity: QuantityId, coeffs: Coefficients, spec: SolutionSpec, expected: str) -> TrialVerdict:
    """Admissibility, finiteness and conservation of one quantity for one solution."""
    item = entry(quantity.entry_id, coeffs)
    admitted = item.admitted
    value = finite_value(quantity, spec, coeffs)
    conserved = None
    if admitted and value is not None:
        rates = [flux_jump_rate(quantity, spec, coeffs, half_width) for half_width in WINDOWS]
        conserved = shrinks(rates, abs(value))
    return TrialVerdict(
        coefficients=str(coeffs),
        params=spec.params,
        admitted=admitted,
        finite=value is not None,
        conserved=conserved,
        value=value,
        expected=CONDITIONS[expected](coeffs, spec),
    )


def cell(family: Family, quantity: QuantityId) -> TableCell:
    """Evaluate every trial of a cell."""
    expected = EXPECTED_CELLS[family][quantity]
    trials = [trial_verdict(quantity, coeffs, spec, expected) for coeffs, spec in TRIALS[family]]
    return TableCell(family=family, quantity=quantity, expected=expected, trials=trials)
