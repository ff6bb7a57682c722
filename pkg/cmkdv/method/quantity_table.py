import math
from typing import Iterable

import numpy as np
import pandas as pd
from loguru import logger

from ..errors import NonFiniteDensity, NotTabulated
from ..models import GridState, QuantitySchema
from .base_method import BaseMethod
from .conservation import TABLE_QUANTITIES, QuantityId, analytic_quantity_variants, entry, quantity_quadrature

OK_STATUS = "ok"
NOT_TABULATED_STATUS = "not_tabulated"
NOT_ADMITTED_STATUS = "not_admitted"
NON_FINITE_STATUS = "non_finite"


def _parts(value) -> tuple[float, float]:
    if value is None:
        return math.nan, math.nan
    value = complex(value)
    return value.real, value.imag


def _ratio(quadrature, analytic) -> float:
    if quadrature is None or analytic is None or analytic == 0:
        return math.nan
    return (complex(quadrature) / complex(analytic)).real


class QuantityTable(BaseMethod):
    """
    Compares the quadrature of conserved quantities on a sampled solution with their closed forms.

    Every alternative closed form gets a row of its own, named ``"<quantity>:<variant>"``, so that the ratio column
    shows which normalization the numbers support.

    Methods
    -------
    calculate(state, quantities)
        Quadrature, closed forms and ratios.
    """

    def _rows(self, quantity: QuantityId, state: GridState) -> list[dict]:
        family = state.spec.family.value if state.spec is not None else "-"
        item = entry(quantity.entry_id, self.coefficients)
        status = OK_STATUS
        quadrature = None
        if not item.admitted:
            status = NOT_ADMITTED_STATUS
            if self.verbose:
                logger.warning(f"{quantity.value} is not conserved, {item.predicate} does not hold")
        try:
            quadrature = quantity_quadrature(quantity, state, self.coefficients)
        except NonFiniteDensity:
            status = NON_FINITE_STATUS
        variants = {"displayed": None}
        if state.spec is not None:
            try:
                variants = analytic_quantity_variants(quantity, state.spec, self.coefficients)
            except NotTabulated:
                if status == OK_STATUS:
                    status = NOT_TABULATED_STATUS
                if self.verbose:
                    logger.warning(f"{quantity.value} has no closed form for {family}")
        elif status == OK_STATUS:
            status = NOT_TABULATED_STATUS
        rows = []
        for variant, analytic in variants.items():
            name = quantity.value if variant == "displayed" else f"{quantity.value}:{variant}"
            quadrature_re, quadrature_im = _parts(quadrature)
            analytic_re, analytic_im = _parts(analytic)
            ratio = _ratio(quadrature, analytic)
            if self.verbose and np.isfinite(ratio) and not np.isclose(ratio, 1.0):
                logger.warning(f"{name}: quadrature over closed form is {ratio:.12g}")
            rows.append(
                {
                    "quantity": name,
                    "family": family,
                    "quadrature_re": quadrature_re,
                    "quadrature_im": quadrature_im,
                    "analytic_re": analytic_re,
                    "analytic_im": analytic_im,
                    "ratio": ratio,
                    "status": status,
                }
            )
        return rows

    def calculate(self, state: GridState, quantities: Iterable[QuantityId | str] = TABLE_QUANTITIES) -> pd.DataFrame:
        """
        Quadrature and closed forms of quantities for one sampled state.

        Parameters
        ----------
        state : GridState
            Samples, tagged with the solution they were taken from when closed forms are wanted.
        quantities : iterable of QuantityId or str, optional
            Quantities to tabulate, default the six of the conservation table.

        Returns
        -------
        pandas.DataFrame
            Rows validated by ``QuantitySchema``.
        """
        rows = []
        for quantity in quantities:
            rows.extend(self._rows(QuantityId.parse(quantity), state))
        if self.verbose:
            logger.success(f"Tabulated {len(rows)} quantity rows")
        return QuantitySchema.validate(pd.DataFrame(rows))
