"""
Conservation laws: the density and multiplier catalog, exact residuals of the conservation and
adjoint-symmetry equations, density-multiplier correspondence and conserved-quantity evaluation.
"""
from .catalog import (
    ENTRY_IDS,
    CatalogEntry,
    EntryKind,
    catalog,
    conservation_residual,
    entry,
    flux_from_density,
)
from .quantities import (
    TABLE_QUANTITIES,
    QuantityId,
    analytic_jets,
    analytic_quantity,
    analytic_quantity_variants,
    center_of_momentum,
    density_values,
    drift,
    flux_jump_rate,
    grid_for,
    quantity_from_jets,
    quantity_quadrature,
    window_density,
    window_quantity,
)
from .residuals import (
    determining_residual,
    helmholtz_residuals,
    homotopy_density,
    is_variational,
    variational_link,
)
from .table import EXPECTED_CELLS, TRIALS, TableCell, TrialVerdict, cell, trial_verdict
