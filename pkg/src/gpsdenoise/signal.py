"""Synthetic GPS position trajectories: generation, noise, metrics, file I/O.

A position series is a uniformly sampled time axis plus one column per
position component (north, east, altitude), all in meters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

COMPONENTS = ("north", "east", "alt")
SERIES_HEADER = "t,north,east,alt"

# Relative tolerance on timestamp-step uniformity.
_STEP_RTOL = 1e-9


class SeriesFormatError(ValueError):
    """Raised when a series file cannot be parsed.

    Carries the 1-based line number and, for cell-level errors, the
    offending column name.
    """

    def __init__(self, message: str, line: int | None = None, column: str | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class PositionSeries:
    """Uniformly sampled 3-component position signal.

    timestamps: shape (n,), seconds, strictly increasing with constant step.
    samples: shape (n, 3), meters, column order (north, east, alt).
    """

    timestamps: np.ndarray
    samples: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.timestamps, dtype=np.float64)
        x = np.asarray(self.samples, dtype=np.float64)
        if t.ndim != 1 or t.size < 1:
            raise ValueError("timestamps must be a 1-d array with at least one entry")
        if x.ndim != 2 or x.shape[1] != 3:
            raise ValueError(f"samples must have shape (n, 3), got {x.shape}")
        if x.shape[0] != t.shape[0]:
            raise ValueError(f"samples length {x.shape[0]} != timestamps length {t.shape[0]}")
        if not np.isfinite(t).all() or not np.isfinite(x).all():
            raise ValueError("series values must be finite")
        if t.size > 1:
            steps = np.diff(t)
            dt = (t[-1] - t[0]) / (t.size - 1)
            if dt <= 0 or np.any(steps <= 0):
                raise ValueError("timestamps must be strictly increasing")
            if np.max(np.abs(steps - dt)) > _STEP_RTOL * dt:
                raise ValueError("timestamps must have a constant step")
        object.__setattr__(self, "timestamps", _readonly(t))
        object.__setattr__(self, "samples", _readonly(x))

    def __len__(self) -> int:
        return self.timestamps.size

    @property
    def dt(self) -> float:
        """Sample step in seconds; needs at least two samples."""
        if len(self) < 2:
            raise ValueError("dt is undefined for a single-sample series")
        return float((self.timestamps[-1] - self.timestamps[0]) / (len(self) - 1))

    @property
    def nyquist(self) -> float:
        """Nyquist frequency in Hz."""
        return 0.5 / self.dt


@dataclass(frozen=True)
class Sinusoid:
    """One spectral line of the synthetic trajectory."""

    amplitude: float
    frequency: float  # Hz
    phase: float = 0.0  # radians


@dataclass(frozen=True)
class TrajectoryConfig:
    """Deterministic sum-of-sinusoids-plus-drift trajectory model.

    sinusoids holds one sequence of Sinusoid per component in
    (north, east, alt) order. All sinusoid frequencies must stay below
    the Nyquist frequency 1/(2*dt).
    """

    n_samples: int
    dt: float
    sinusoids: tuple[tuple[Sinusoid, ...], ...] = ((), (), ())
    drift: tuple[float, float, float] = (0.0, 0.0, 0.0)  # meters/second
    offset: tuple[float, float, float] = (0.0, 0.0, 0.0)  # meters

    def __post_init__(self):
        if self.n_samples < 2:
            raise ValueError(f"n_samples must be >= 2, got {self.n_samples}")
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        sinusoids = tuple(tuple(s) for s in self.sinusoids)
        if len(sinusoids) != 3:
            raise ValueError("sinusoids must have one sequence per component (3)")
        if len(self.drift) != 3 or len(self.offset) != 3:
            raise ValueError("drift and offset must have 3 entries")
        nyq = 0.5 / self.dt
        for comp, sines in zip(COMPONENTS, sinusoids):
            for s in sines:
                if s.frequency >= nyq:
                    raise ValueError(
                        f"{comp} sinusoid frequency {s.frequency} Hz is not below "
                        f"the Nyquist frequency {nyq} Hz"
                    )
        object.__setattr__(self, "sinusoids", sinusoids)
        object.__setattr__(self, "drift", tuple(float(v) for v in self.drift))
        object.__setattr__(self, "offset", tuple(float(v) for v in self.offset))


@dataclass(frozen=True)
class NoiseConfig:
    """Additive zero-mean Gaussian noise, one sigma shared by all components."""

    sigma: float  # meters
    seed: int = 0

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")


def generate_trajectory(config: TrajectoryConfig) -> PositionSeries:
    """Evaluate the clean trajectory model on a uniform time grid.

    sample[i][c] = offset_c + drift_c * t_i + sum_k A sin(2 pi f t_i + phi),
    with t_i = i * dt. Purely deterministic.
    """
    t = np.arange(config.n_samples, dtype=np.float64) * config.dt
    samples = np.empty((config.n_samples, 3), dtype=np.float64)
    for c in range(3):
        col = config.offset[c] + config.drift[c] * t
        for s in config.sinusoids[c]:
            col = col + s.amplitude * np.sin(2.0 * math.pi * s.frequency * t + s.phase)
        samples[:, c] = col
    return PositionSeries(t, samples)


def add_noise(series: PositionSeries, noise: NoiseConfig) -> PositionSeries:
    """Add seeded i.i.d. Gaussian noise to every entry.

    Same seed and input always produce the identical output series;
    sigma = 0 reproduces the input exactly.
    """
    rng = np.random.default_rng(noise.seed)
    g = rng.normal(0.0, noise.sigma, size=series.samples.shape)
    return PositionSeries(series.timestamps, series.samples + g)


def mse(a: PositionSeries, b: PositionSeries) -> float:
    """Mean squared difference over all n*3 entries."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    d = a.samples - b.samples
    return float(np.mean(d * d))


def _format_row(values: Sequence[float]) -> str:
    return ",".join(repr(float(v)) for v in values)


def write_series(series: PositionSeries, path: str | Path, sidecar: str | None = None) -> None:
    """Write a series as CSV with full float64 precision.

    Optionally prepends a single '#'-prefixed sidecar comment line that
    read_series will skip.
    """
    lines = []
    if sidecar is not None:
        lines.append(f"# {sidecar}")
    lines.append(SERIES_HEADER)
    for t, row in zip(series.timestamps, series.samples):
        lines.append(_format_row((t, row[0], row[1], row[2])))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_series(path: str | Path) -> PositionSeries:
    """Parse a series CSV written by write_series.

    Comment lines starting with '#' are skipped. Raises SeriesFormatError
    on a malformed header, a missing or non-numeric cell (naming line and
    column), or a non-uniform time axis.
    """
    names = ("t",) + COMPONENTS
    times: list[float] = []
    rows: list[list[float]] = []
    header_seen = False
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not header_seen:
                if line != SERIES_HEADER:
                    raise SeriesFormatError(
                        f"line {lineno}: expected header '{SERIES_HEADER}', got '{line}'",
                        line=lineno,
                    )
                header_seen = True
                continue
            cells = line.split(",")
            if len(cells) != 4:
                raise SeriesFormatError(
                    f"line {lineno}: expected 4 columns ({','.join(names)}), found {len(cells)}",
                    line=lineno,
                )
            parsed = []
            for name, cell in zip(names, cells):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise SeriesFormatError(
                        f"line {lineno}, column {name}: not a number: '{cell}'",
                        line=lineno,
                        column=name,
                    ) from None
            times.append(parsed[0])
            rows.append(parsed[1:])
    if not header_seen:
        raise SeriesFormatError("missing header line", line=1)
    if not rows:
        raise SeriesFormatError("no data rows", line=1)
    try:
        return PositionSeries(np.array(times), np.array(rows))
    except ValueError as exc:
        raise SeriesFormatError(f"invalid series data: {exc}") from exc
