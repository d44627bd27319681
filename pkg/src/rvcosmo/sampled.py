"""Sampled positive functions on increasing time grids.

``SampledFunction`` is the universal carrier for scale factors, density
tracks, slowly varying parts etc.  ``GridSeries`` is the signed relative:
same grid contract but the values may take any sign (derivatives, epsilon
series, Lambda-shifted mu).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositive

# Relative tolerance for recognizing a log-uniform grid.
LOG_UNIFORM_RTOL = 1e-9

CSV_FLOAT_FMT = "%.17g"


def _as_locked_array(x) -> np.ndarray:
    a = np.asarray(x, dtype=float)
    a = np.atleast_1d(a).copy()
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GridSeries:
    """Signed samples on a strictly increasing grid."""

    grid: np.ndarray = field()
    values: np.ndarray = field()

    def __post_init__(self):
        object.__setattr__(self, "grid", _as_locked_array(self.grid))
        object.__setattr__(self, "values", _as_locked_array(self.values))
        if self.grid.ndim != 1 or self.values.ndim != 1:
            raise ValueError("grid and values must be one-dimensional")
        if len(self.grid) != len(self.values):
            raise ValueError("grid and values must have equal length")
        if len(self.grid) < 2:
            raise ValueError("need at least 2 samples")
        if not np.all(np.isfinite(self.grid)) or not np.all(np.isfinite(self.values)):
            raise ValueError("grid and values must be finite")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")

    def __len__(self) -> int:
        return len(self.grid)

    @property
    def log_grid(self) -> np.ndarray:
        return np.log(self.grid)

    def to_csv(self, path) -> None:
        write_csv(path, ("t", "value"), (self.grid, self.values))

    @classmethod
    def from_csv(cls, path):
        t, v = read_csv_columns(path, 2)
        return cls(t, v)


@dataclass(frozen=True)
class SampledFunction(GridSeries):
    """Strictly positive samples on a strictly increasing positive grid."""

    MIN_POINTS = 16

    def __post_init__(self):
        super().__post_init__()
        if len(self.grid) < self.MIN_POINTS:
            raise ValueError(f"need at least {self.MIN_POINTS} samples")
        if self.grid[0] <= 0:
            raise ValueError("grid times must be positive")
        if np.any(self.values <= 0):
            raise NonPositive("sampled function values must be strictly positive")

    @property
    def log_values(self) -> np.ndarray:
        return np.log(self.values)

    def is_log_uniform(self, rtol: float = LOG_UNIFORM_RTOL) -> bool:
        d = np.diff(self.log_grid)
        return bool(np.all(np.abs(d - d[0]) <= rtol * np.abs(d[0])))

    def scaled(self, c: float) -> "SampledFunction":
        if c <= 0:
            raise NonPositive("scale constant must be positive")
        return SampledFunction(self.grid, c * self.values)


def log_grid(t_min: float, t_max: float, n: int) -> np.ndarray:
    """Geometrically spaced grid (the library's default grid generator)."""
    if not (0 < t_min < t_max):
        raise ValueError("need 0 < t_min < t_max")
    return np.geomspace(t_min, t_max, n)


def sample(fn, grid) -> SampledFunction:
    grid = np.asarray(grid, dtype=float)
    return SampledFunction(grid, fn(grid))


def write_csv(path, header, columns) -> None:
    """Write columns with 17-significant-digit decimals (exact double round-trip)."""
    cols = [np.asarray(c, dtype=float) for c in columns]
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*cols):
            fh.write(",".join(CSV_FLOAT_FMT % x for x in row) + "\n")


def read_csv_columns(path, ncols: int):
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] < ncols:
        raise ValueError(f"expected at least {ncols} columns in {path}")
    return tuple(data[:, i] for i in range(ncols))
