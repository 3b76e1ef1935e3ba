"""Sparse Fourier synthesis and analysis on the k-torus, plus zero-box scans.

Synthesis evaluates a ``TorusSeries`` at arbitrary angle vectors; a doubled
exponent d contributes exp(i <d, theta> / 2), so half-integer natural
exponents come out as half-angle phases.  Analysis recovers coefficients
from samples on a full regular grid by FFT and is exact (to rounding) for
2*pi-periodic band-limited data whose bandwidth respects the grid bound.

``zero_scan`` slides axis-aligned boxes over a sampled grid and reports
every box on which the sampled magnitude stays below a threshold, together
with the box that comes closest to vanishing.  A finite trigonometric sum
that vanishes on an open box must vanish identically, so for a nonzero
series the scan is expected to find no vanishing box; the scan certifies
sampled-grid behavior only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .rootweyl import SpectrumSet, Weight
from .series import ZERO_THRESHOLD, TorusSeries

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GridSpec:
    """Full regular grid on the k-torus: angle j*2*pi/n per axis."""

    points_per_axis: tuple[int, ...]

    def __post_init__(self):
        if not self.points_per_axis or any(n < 1 for n in self.points_per_axis):
            raise ParameterError("grid needs a positive point count per axis")
        object.__setattr__(
            self, "points_per_axis", tuple(int(n) for n in self.points_per_axis)
        )

    @property
    def rank(self) -> int:
        return len(self.points_per_axis)

    def axis_angles(self) -> list[np.ndarray]:
        return [TWO_PI * np.arange(n) / n for n in self.points_per_axis]

    def steps(self) -> tuple[float, ...]:
        return tuple(TWO_PI / n for n in self.points_per_axis)

    def size(self) -> int:
        return int(np.prod(self.points_per_axis))

    def exact_for(self, series: TorusSeries) -> bool:
        """Exactness condition: every axis count exceeds twice the doubled band."""
        bound = 2 * series.max_abs_exponent()
        return all(n > bound for n in self.points_per_axis)

    def require_band(self, band_limit: int) -> None:
        """Raise unless the grid resolves natural band ``band_limit``."""
        if any(n <= 4 * band_limit for n in self.points_per_axis):
            raise ParameterError(
                f"grid {self.points_per_axis} too small for band limit {band_limit}"
            )


def synthesize(series: TorusSeries, points) -> np.ndarray:
    """Evaluate the series at each angle vector in ``points`` (shape (N, k))."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != series.rank:
        raise DomainError(f"points have {pts.shape[1]} angles, series rank {series.rank}")
    out = np.zeros(pts.shape[0], dtype=complex)
    for exp, c in series.terms():
        out += c * np.exp(0.5j * (pts @ np.asarray(exp, dtype=float)))
    return out


def synthesize_on_grid(series: TorusSeries, grid: GridSpec) -> np.ndarray:
    """Series values on the full grid, shaped ``grid.points_per_axis``."""
    if grid.rank != series.rank:
        raise DomainError("grid rank does not match series rank")
    axes = grid.axis_angles()
    out = np.zeros(grid.points_per_axis, dtype=complex)
    for exp, c in series.terms():
        factors = [np.exp(0.5j * d * ax) for d, ax in zip(exp, axes)]
        term = factors[0]
        for f in factors[1:]:
            term = np.multiply.outer(term, f)
        out += c * term
    return out


def analyze(samples: np.ndarray, grid: GridSpec, band_limit: int | None = None) -> TorusSeries:
    """Discrete Fourier coefficients of full-grid samples, pruned below 1e-12.

    ``band_limit`` (natural coordinates) declares the bandwidth of the
    underlying function; if given, the grid must satisfy the exactness bound.
    Only integer frequencies are recovered, so the samples must come from a
    2*pi-periodic function.
    """
    samples = np.asarray(samples, dtype=complex)
    if samples.shape != grid.points_per_axis:
        raise ParameterError(
            f"samples shaped {samples.shape}, expected {grid.points_per_axis}"
        )
    if band_limit is not None:
        grid.require_band(band_limit)
    coeffs = np.fft.fftn(samples) / samples.size
    terms = {}
    for idx in np.argwhere(np.abs(coeffs) > ZERO_THRESHOLD):
        naturals = tuple(
            int(i) if i <= n // 2 else int(i) - n
            for i, n in zip(idx, grid.points_per_axis)
        )
        terms[tuple(2 * m for m in naturals)] = complex(coeffs[tuple(idx)])
    return TorusSeries(grid.rank, terms)


def product(a: TorusSeries, b: TorusSeries) -> TorusSeries:
    """Exponent-wise convolution; support within the Minkowski sum of supports."""
    if a.rank != b.rank:
        raise DomainError("rank mismatch")
    return a * b


def spectrum(series: TorusSeries) -> SpectrumSet:
    """Exponent support as a set of weights."""
    return SpectrumSet.of(Weight(exp) for exp in series.support())


@dataclass(frozen=True)
class ScanReport:
    """Outcome of a sliding-box magnitude scan over sampled values."""

    box_side: float
    delta: float
    worst_box_center: tuple[float, ...]
    worst_box_min: float
    worst_box_max: float
    vanishing_boxes: tuple[tuple[float, ...], ...]
    boxes_scanned: int

    @property
    def has_vanishing_box(self) -> bool:
        return bool(self.vanishing_boxes)

    def serialize(self) -> dict:
        return {
            "box_side": self.box_side,
            "delta": self.delta,
            "boxes_scanned": self.boxes_scanned,
            "worst_box_center": list(self.worst_box_center),
            "worst_box_min": self.worst_box_min,
            "worst_box_max": self.worst_box_max,
            "vanishing_box_count": len(self.vanishing_boxes),
            "vanishing_boxes": [list(c) for c in self.vanishing_boxes[:64]],
        }


def _axis_windows(n: int, step: float, length: float, periodic: bool, box_side: float):
    """Box centers along one axis with the sample-index window of each box.

    Stride is half the box side, so any true box 1.5x the scan side contains
    a scanned box.  Periodic axes wrap; bounded axes keep boxes inside.
    """
    stride = box_side / 2.0
    half = box_side / 2.0
    centers = []
    if periodic:
        t = 0.0
        while t < length - 1e-12:
            centers.append(t)
            t += stride
    else:
        t = half
        while t <= length - half + 1e-12:
            centers.append(t)
            t += stride
        if not centers:
            centers = [length / 2.0]
    windows = []
    for c in centers:
        lo = int(math.ceil((c - half) / step - 1e-9))
        hi = int(math.floor((c + half) / step + 1e-9))
        idx = np.arange(lo, hi + 1)
        if periodic:
            idx = idx % n
        else:
            idx = idx[(idx >= 0) & (idx < n)]
        windows.append(idx)
    return centers, windows


def scan_samples(
    values: np.ndarray,
    steps: tuple[float, ...],
    lengths: tuple[float, ...],
    periodic: tuple[bool, ...],
    box_side: float,
    delta: float,
) -> ScanReport:
    """Slide boxes of the given side over gridded magnitudes.

    ``values`` holds nonnegative magnitudes on a regular grid; axis j has
    sample spacing ``steps[j]`` over a domain of extent ``lengths[j]``.
    A box is vanishing when its sampled maximum stays below ``delta``.
    """
    if box_side <= 0:
        raise ParameterError("box side must be positive")
    if delta <= 0:
        raise ParameterError("threshold must be positive")
    for step, length in zip(steps, lengths):
        if step > box_side / 8.0 + 1e-12:
            raise ParameterError(
                f"grid step {step:.6g} exceeds box_side/8 = {box_side / 8:.6g}"
            )
        if box_side > length + 1e-12:
            raise ParameterError("box side exceeds the domain extent")

    per_axis = [
        _axis_windows(n, step, length, per, box_side)
        for n, step, length, per in zip(values.shape, steps, lengths, periodic)
    ]
    centers_per_axis = [c for c, _ in per_axis]
    windows_per_axis = [w for _, w in per_axis]

    vanishing: list[tuple[float, ...]] = []
    worst_max = math.inf
    worst_center: tuple[float, ...] = ()
    worst_min = math.inf
    boxes = 0

    shape = tuple(len(c) for c in centers_per_axis)
    for flat in range(int(np.prod(shape))):
        multi = np.unravel_index(flat, shape)
        idx = tuple(windows_per_axis[ax][i] for ax, i in enumerate(multi))
        block = values[np.ix_(*idx)]
        bmax = float(block.max())
        boxes += 1
        center = tuple(centers_per_axis[ax][i] for ax, i in enumerate(multi))
        if bmax < delta:
            vanishing.append(center)
        if bmax < worst_max:
            worst_max = bmax
            worst_center = center
            worst_min = float(block.min())
    return ScanReport(
        box_side=box_side,
        delta=delta,
        worst_box_center=worst_center,
        worst_box_min=worst_min,
        worst_box_max=worst_max,
        vanishing_boxes=tuple(vanishing),
        boxes_scanned=boxes,
    )


def zero_scan(series: TorusSeries, grid: GridSpec, box_side: float, delta: float) -> ScanReport:
    """Box scan of |series| sampled on a full torus grid.

    Requires at least 8 samples per box side on every axis.
    """
    values = np.abs(synthesize_on_grid(series, grid))
    k = grid.rank
    return scan_samples(
        values,
        steps=grid.steps(),
        lengths=(TWO_PI,) * k,
        periodic=(True,) * k,
        box_side=box_side,
        delta=delta,
    )


def write_grid_csv(path, grid: GridSpec, values: np.ndarray) -> None:
    """CSV exchange format: one row per grid point, angle coordinates then re, im."""
    values = np.asarray(values, dtype=complex).reshape(grid.points_per_axis)
    axes = grid.axis_angles()
    with open(path, "w") as fh:
        fh.write(",".join(f"theta{j + 1}" for j in range(grid.rank)) + ",re,im\n")
        for flat in range(values.size):
            multi = np.unravel_index(flat, grid.points_per_axis)
            angles = [axes[ax][i] for ax, i in enumerate(multi)]
            v = values[multi]
            fh.write(
                ",".join(f"{a:.12g}" for a in angles) + f",{v.real:.12g},{v.imag:.12g}\n"
            )


def write_abs_tsv(path, grid: GridSpec, values: np.ndarray) -> None:
    """Plot-ready tab-separated magnitudes over the grid."""
    values = np.abs(np.asarray(values)).reshape(grid.points_per_axis)
    axes = grid.axis_angles()
    with open(path, "w") as fh:
        fh.write("\t".join(f"theta{j + 1}" for j in range(grid.rank)) + "\tabs\n")
        for flat in range(values.size):
            multi = np.unravel_index(flat, grid.points_per_axis)
            angles = [axes[ax][i] for ax, i in enumerate(multi)]
            fh.write("\t".join(f"{a:.12g}" for a in angles) + f"\t{values[multi]:.12g}\n")
