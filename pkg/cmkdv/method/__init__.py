"""
Computational modules of cmkdv: the equation and its coefficient cases, closed-form solutions, travelling-wave
reductions, conservation laws, spectral time evolution, and the batch runners built on them.
"""

from . import closed_form, conservation, equation, evolution, reduction, spectral
from .base_method import BaseMethod
from .evolution import (
    INSTABILITY_FACTOR,
    NONLINEAR_CFL,
    PERIODICITY_TOLERANCE,
    ConvergenceReport,
    Evolution,
    drift_report,
    evolve,
    galilean_balance,
    pde_pointwise_residual,
    quantity_series,
    self_convergence,
    stability_bound,
    wave_error,
)
from .quantity_table import QuantityTable
from .symbolic_verification import EntryReport, IdentityCheck, Scope, SymbolicVerification
from .table_one import TableOne
