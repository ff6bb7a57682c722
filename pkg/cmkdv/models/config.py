from enum import Enum
from pathlib import Path

from pydantic import BaseModel, ConfigDict

from .coefficients import Coefficients
from .grid import Grid, SolverOptions
from .solution import SolutionSpec


class OutputFormat(Enum):
    """Report formats."""

    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    """
    Fully resolved settings of one command, echoed in its report.

    Parameters
    ----------
    coefficients : Coefficients
        Equation coefficients.
    spec : SolutionSpec, optional
        Solution family and parameters, for commands that need one.
    grid : Grid
        Spatial grid of sampling, quadrature and evolution.
    options : SolverOptions
        Time-integration options.
    out : pathlib.Path, optional
        Output directory; reports go to stdout when missing.
    format : OutputFormat
        Report format, default JSON.
    """

    model_config = ConfigDict(frozen=True)

    coefficients: Coefficients = Coefficients()
    spec: SolutionSpec | None = None
    grid: Grid = Grid()
    options: SolverOptions = SolverOptions()
    out: Path | None = None
    format: OutputFormat = OutputFormat.JSON
