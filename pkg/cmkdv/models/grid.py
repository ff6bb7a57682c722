from enum import Enum
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, InstanceOf, field_validator, model_validator

from ..utils.serialization import to_canonical_json
from .schema import SampleSchema
from .solution import SolutionSpec

DEFAULT_HALF_WIDTH = 40.0
DEFAULT_POINTS = 1024
DEFAULT_DT = 1e-3
MIN_POINTS = 16


class Grid(BaseModel):
    """
    Uniform periodic grid x_j = -L + j h, h = 2L/N, on which x = -L and x = L are identified.

    Parameters
    ----------
    half_width : float
        Half width L of the domain, must be positive.
    points : int
        Number of nodes N, a power of two not smaller than 16.
    """

    model_config = ConfigDict(frozen=True)

    half_width: float = Field(default=DEFAULT_HALF_WIDTH, gt=0)
    points: int = Field(default=DEFAULT_POINTS, ge=MIN_POINTS)

    @field_validator("points")
    @classmethod
    def validate_points(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError("Number of grid points must be a power of two")
        return value

    @property
    def spacing(self) -> float:
        return 2 * self.half_width / self.points

    @property
    def x(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.points)

    @property
    def wavenumbers(self) -> np.ndarray:
        """Angular wavenumbers in FFT order."""
        return 2 * np.pi * np.fft.fftfreq(self.points, d=self.spacing)


class GridState(BaseModel):
    """
    Complex samples on a grid at one time.

    Parameters
    ----------
    grid : Grid
        Spatial grid.
    t : float
        Time of the snapshot.
    samples : numpy.ndarray
        Complex values at the nodes; copied and made read-only.
    spec : SolutionSpec, optional
        Closed-form solution the samples were taken from, if any.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: Grid
    t: float = 0.0
    samples: InstanceOf[np.ndarray]
    spec: SolutionSpec | None = None

    @field_validator("samples", mode="before")
    @classmethod
    def validate_samples(cls, value) -> np.ndarray:
        samples = np.array(value, dtype=complex)
        samples.setflags(write=False)
        return samples

    @model_validator(mode="after")
    def validate_shape(self):
        if self.samples.shape != (self.grid.points,):
            raise ValueError(f"Expected {self.grid.points} samples, got {self.samples.shape}")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("Samples must be finite")
        return self

    def to_frame(self) -> pd.DataFrame:
        """Samples as a validated frame with columns x, re_u, im_u, abs_u, arg_u."""
        frame = pd.DataFrame(
            {
                "x": self.grid.x,
                "re_u": self.samples.real,
                "im_u": self.samples.imag,
                "abs_u": np.abs(self.samples),
                "arg_u": np.angle(self.samples),
            }
        )
        return SampleSchema.validate(frame)

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False, float_format="%.17g")
        return path


class Scheme(Enum):
    """Time-stepping schemes."""

    IF_RK4 = "IF-RK4"


class SolverOptions(BaseModel):
    """
    Options of the pseudospectral time integration.

    Parameters
    ----------
    dt : float
        Time step, must be positive.
    t_end : float
        Final time, non-negative.
    dealias : bool, optional
        Whether to apply the 2/3 rule to the nonlinear term, default True.
    scheme : Scheme, optional
        Time-stepping scheme, default IF-RK4.
    record_every : int, optional
        Number of steps between recorded snapshots, default 100.
    """

    model_config = ConfigDict(frozen=True)

    dt: float = Field(default=DEFAULT_DT, gt=0)
    t_end: float = Field(default=1.0, ge=0)
    dealias: bool = True
    scheme: Scheme = Scheme.IF_RK4
    record_every: int = Field(default=100, ge=1)

    @property
    def steps(self) -> int:
        return int(round(self.t_end / self.dt))


class Trajectory(BaseModel):
    """
    Recorded snapshots of an evolution together with the options that produced them.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    states: list[GridState]
    options: SolverOptions

    @property
    def times(self) -> list[float]:
        return [state.t for state in self.states]

    @property
    def initial(self) -> GridState:
        return self.states[0]

    @property
    def final(self) -> GridState:
        return self.states[-1]

    def to_frame(self) -> pd.DataFrame:
        frames = [state.to_frame().assign(t=state.t) for state in self.states]
        return pd.concat(frames, ignore_index=True)

    def write(self, directory: str | Path, manifest: dict | None = None) -> list[Path]:
        """
        Write one CSV per snapshot (x, re_u, im_u) and a JSON manifest.
        """
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = []
        for index, state in enumerate(self.states):
            path = directory / f"snapshot_{index:05d}.csv"
            state.to_frame()[["x", "re_u", "im_u"]].to_csv(path, index=False, float_format="%.17g")
            paths.append(path)
        content = {
            "grid": self.initial.grid,
            "dt": self.options.dt,
            "times": self.times,
            "snapshots": [path.name for path in paths],
            **(manifest or {}),
        }
        manifest_path = directory / "manifest.json"
        manifest_path.write_text(to_canonical_json(content))
        paths.append(manifest_path)
        return paths
