"""
Value records: coefficients and their cases, solution specifications, grids and run settings.
"""
from .coefficients import CaseFlags, Coefficients, ScaleReport, Sigma
from .config import OutputFormat, RunConfig
from .grid import DEFAULT_DT, DEFAULT_HALF_WIDTH, DEFAULT_POINTS, Grid, GridState, Scheme, SolverOptions, Trajectory
from .schema import QuantitySchema, SampleSchema, TableSchema
from .solution import SMOOTH_FAMILIES, AsymptoticPair, Family, SolutionSpec
