import pandas as pd
from loguru import logger

from ..errors import CmkdvError
from ..models import Coefficients, Family, Grid, SolutionSpec, SolverOptions, TableSchema
from . import evolution
from .base_method import BaseMethod
from .closed_form import sample_grid
from .conservation import EXPECTED_CELLS, TABLE_QUANTITIES, TRIALS, QuantityId, TableCell, TrialVerdict, cell

EVOLUTION_GRID = Grid(half_width=40.0, points=1024)
EVOLUTION_OPTIONS = SolverOptions(dt=1e-3, t_end=0.2, record_every=50)


class TableOne(BaseMethod):
    """
    Decides for every solution family and conserved quantity whether the integrated density is finite and
    conserved, and compares the verdicts with the expected conditions.

    Each cell is tried with representative coefficients and parameters. Finiteness is window stability of the
    quadrature, conservation is the vanishing flux balance; optionally the trials that pass are also evolved and
    their quadrature drift is checked.

    Methods
    -------
    calculate(families, evolve)
        Verdict matrix as a frame.
    """

    cells: list[TableCell] = []

    def _evolved(self, trial: TrialVerdict, quantity: QuantityId, coeffs: Coefficients, spec: SolutionSpec):
        try:
            state = sample_grid(spec, coeffs, EVOLUTION_GRID)
            trajectory = evolution.evolve(state, coeffs, EVOLUTION_OPTIONS)
            value = evolution.drift_report(trajectory, [quantity], coeffs)[quantity.value]
        except CmkdvError as error:
            if self.verbose:
                logger.warning(f"{spec.family.value} trial not evolved: {error}")
            return trial
        return trial.model_copy(update={"drift": value})

    def _cell(self, family: Family, quantity: QuantityId, evolve_trials: bool) -> TableCell:
        result = cell(family, quantity)
        if not evolve_trials:
            return result
        trials = []
        for trial, (coeffs, spec) in zip(result.trials, TRIALS[family]):
            if trial.verdict:
                trial = self._evolved(trial, quantity, coeffs, spec)
            trials.append(trial)
        return result.model_copy(update={"trials": trials})

    def calculate(self, families: list[Family] | None = None, evolve: bool = False) -> pd.DataFrame:
        """
        Verdict matrix of the table.

        Parameters
        ----------
        families : list of Family, optional
            Rows to evaluate, default all of them.
        evolve : bool, optional
            Whether to confirm conserved trials by a short evolution, default False.

        Returns
        -------
        pandas.DataFrame
            Rows validated by ``TableSchema``; the evaluated cells are kept in ``cells``.
        """
        families = families or list(EXPECTED_CELLS)
        pairs = [(family, quantity) for family in families for quantity in TABLE_QUANTITIES]
        if self.verbose:
            logger.info(f"Evaluating {len(pairs)} cells")
        progress = self.progress(pairs, "Cells")
        self.cells = [self._cell(family, quantity, evolve) for family, quantity in progress]
        frame = pd.DataFrame(
            [
                {
                    "family": result.family.value,
                    "quantity": result.quantity.value,
                    "expected": result.expected,
                    "trials": len(result.trials),
                    "agreeing": sum(trial.matches for trial in result.trials),
                    "matches": result.matches,
                }
                for result in self.cells
            ]
        )
        if self.verbose:
            mismatched = frame[~frame["matches"]]
            if mismatched.empty:
                logger.success("Every cell matches")
            else:
                for _, row in mismatched.iterrows():
                    logger.warning(f"Cell ({row['family']}, {row['quantity']}) does not match {row['expected']}")
        return TableSchema.validate(frame)
