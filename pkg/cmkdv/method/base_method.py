from abc import ABC
from typing import Iterable

from pydantic import BaseModel
from tqdm import tqdm

from ..models import Coefficients


class BaseMethod(ABC, BaseModel):

    """
    Common ground of the batch runners.

    Attributes
    ----------
    coefficients : Coefficients
        Equation coefficients the runner works with, default alpha = beta = 0.

    verbose : bool, optional
        Whether to log and display progress, default is True.

    Methods
    -------
    calculate(*args, **kwargs) -> any
        Main calculation, implemented by every runner.

    plot(*args, **kwargs) -> any
        Plot of a calculation result, for runners that have one.
    """

    coefficients: Coefficients = Coefficients()
    verbose: bool = True

    def progress(self, items: Iterable, desc: str) -> Iterable:
        """Items wrapped in a progress bar that stays silent unless verbose."""
        return tqdm(items, desc=desc, disable=not self.verbose)

    def calculate(self, *args, **kwargs) -> any:
        raise NotImplementedError(f"{type(self).__name__} does not implement calculate")

    def plot(self, *args, **kwargs) -> any:
        raise NotImplementedError(f"{type(self).__name__} has no plot")
