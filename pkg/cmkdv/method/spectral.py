"""
Fourier differentiation and dealiasing on periodic grids.
"""
import numpy as np
from scipy import fft

from ..models import Grid, GridState

DEALIAS_FRACTION = 2 / 3


def derivative_symbol(grid: Grid, order: int) -> np.ndarray:
    """
    Multiplier (ik)^order of the order-th derivative; the Nyquist mode is dropped for odd orders.
    """
    symbol = (1j * grid.wavenumbers) ** order
    if order % 2:
        symbol[grid.points // 2] = 0
    return symbol


def dealias_mask(grid: Grid) -> np.ndarray:
    """Boolean mask keeping the modes with |k| below 2/3 of the Nyquist wavenumber."""
    index = np.abs(fft.fftfreq(grid.points) * grid.points)
    return index < DEALIAS_FRACTION * grid.points / 2


def spectral_derivative(samples, grid: Grid, order: int = 1) -> np.ndarray:
    """
    Order-th x-derivative of periodic complex samples.

    Parameters
    ----------
    samples : array-like
        Complex values at the grid nodes.
    grid : Grid
        Grid of the samples.
    order : int, optional
        Derivative order, default 1.
    """
    if order < 0:
        raise ValueError(f"Derivative order must be non-negative, got {order}")
    samples = np.asarray(samples, dtype=complex)
    if order == 0:
        return samples.copy()
    return fft.ifft(derivative_symbol(grid, order) * fft.fft(samples))


def spectral_jets(state: GridState, order: int) -> np.ndarray:
    """u and its x-derivatives up to ``order`` stacked along the first axis."""
    transform = fft.fft(state.samples)
    jets = [np.asarray(state.samples, dtype=complex)]
    for k in range(1, order + 1):
        jets.append(fft.ifft(derivative_symbol(state.grid, k) * transform))
    return np.stack(jets)


def tail_ratio(samples) -> float:
    """Share of spectral energy in the upper half of the resolved modes."""
    power = np.abs(fft.fft(np.asarray(samples, dtype=complex))) ** 2
    points = power.size
    index = np.abs(fft.fftfreq(points) * points)
    total = power.sum()
    if total == 0:
        return 0.0
    return float(power[index >= points / 4].sum() / total)
