"""End-to-end uncertainty experiment on SU(2).

Pipeline for a band-limited f with prescribed spectrum: certify the
lacunarity cover condition for the spectrum, expand the central average
F_f in characters, multiply by the Weyl denominator and check that the
product's exponents stay inside the orbit of the shifted spectrum {n+1}
(highest weights sit at lambda + rho on the torus side), then scan |F_f|
and |Delta * F_f| on the torus and |f| on an Euler-angle grid for
vanishing boxes.  A nonzero band-limited function is real analytic, so no
box should vanish; the report asserts exactly that (and, for an empty
spectrum, the opposite: every box vanishes).

The lacunarity verdict is reported but never asserted: a spectrum that fails
the cover condition still runs the whole pipeline for contrast.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import ParameterError
from .rootweyl import SpectrumSet, Weight, build_root_system, orbit_of_set
from .series import TorusSeries
from .characters import weyl_denominator
from .lacunary import ConditionReport, check_condition_1
from .torus import GridSpec, ScanReport, scan_samples, synthesize_on_grid, zero_scan
from .su2 import (
    BandlimitedFunction,
    HaarGrid,
    char_expansion,
    grid_for_band,
    sample_on_euler_grid,
)

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi

# Product-series terms above this magnitude must lie in the predicted orbit.
CONTAINMENT_TOL = 1e-9

# Scan threshold fallback when the relative scale is exactly zero (f == 0):
# any positive value classifies identically-zero samples as vanishing.
ZERO_SCALE_DELTA = 1e-12


def make_coefficients(spec, mode: str, seed: int = 0) -> dict[int, np.ndarray]:
    """Coefficient families for the experiment.

    ``identity``: A_n = I/(n+1) (so F_f = sum of plain characters).
    ``random``: seeded complex Gaussian matrices scaled to unit Frobenius norm.
    """
    spec = sorted(int(n) for n in spec)
    if any(n < 0 for n in spec):
        raise ParameterError("spectrum entries must be nonnegative")
    out: dict[int, np.ndarray] = {}
    if mode == "identity":
        for n in spec:
            out[n] = np.eye(n + 1, dtype=complex) / (n + 1)
    elif mode == "random":
        rng = np.random.default_rng(seed)
        for n in spec:
            a = rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
            out[n] = a / np.linalg.norm(a)
    else:
        raise ParameterError(f"unknown coefficient mode {mode!r}")
    return out


@dataclass
class ExperimentReport:
    """Everything the pipeline produced, plus the pass/fail verdict."""

    spectrum: tuple[int, ...]
    q: Fraction
    n_cutoff: int
    r: int
    box_side: float
    delta_rel: float
    g_box_side: float
    torus_points: int
    grid_shape: tuple[int, int, int]
    g_scan_shape: tuple[int, int, int]
    f: BandlimitedFunction
    condition: ConditionReport
    shifted_spectrum: tuple[int, ...]
    target_exponents: tuple[int, ...]
    ff: TorusSeries
    product: TorusSeries
    stray_terms: tuple[tuple[tuple[int, ...], float], ...]
    scan_ff: ScanReport
    scan_product: ScanReport
    scan_g: ScanReport
    assertions: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.assertions.values())

    def serialize(self) -> dict:
        doc = {
            "group": "su2",
            "parameters": {
                "spectrum": list(self.spectrum),
                "q": str(self.q),
                "n": self.n_cutoff,
                "r": self.r,
                "box_side": self.box_side,
                "delta_rel": self.delta_rel,
                "g_box_side": self.g_box_side,
                "torus_points": self.torus_points,
                "haar_grid": list(self.grid_shape),
                "g_scan_grid": list(self.g_scan_shape),
            },
            "f": {
                "is_zero": self.f.is_zero,
                "band_limit": self.f.band_limit,
                "support": list(self.f.support),
                "norm2": self.f.norm2(),
                "coeffs": self.f.serialize()["coeffs"],
            },
            "condition": self.condition.serialize(),
            "orbit": list(self.target_exponents),
            "F_f": {
                "coeff_norm2": self.ff.norm2(),
                "terms": self.ff.to_records(),
            },
            "Delta+ product": {
                "coeff_norm2": self.product.norm2(),
                "terms": self.product.to_records(),
                "shifted_spectrum": list(self.shifted_spectrum),
                "stray_terms": [
                    {"exponent": list(e), "abs": a} for e, a in self.stray_terms
                ],
            },
            "scan": {
                "F_f": self.scan_ff.serialize(),
                "product": self.scan_product.serialize(),
                "f_on_G": self.scan_g.serialize(),
            },
            "assertions": dict(sorted(self.assertions.items())),
            "passed": self.passed,
        }
        return doc


def _g_scan_axes(g_box_side: float):
    """Euler-grid axes dense enough for the G-side box scan (step <= side/8)."""
    if g_box_side <= 0:
        raise ParameterError("g_box_side must be positive")
    step = g_box_side / 8.0
    n_phi = int(math.ceil(TWO_PI / step))
    n_psi = int(math.ceil(FOUR_PI / step))
    n_theta = int(math.ceil(math.pi / step)) + 1
    phi = TWO_PI * np.arange(n_phi) / n_phi
    psi = FOUR_PI * np.arange(n_psi) / n_psi
    theta = np.linspace(0.0, math.pi, n_theta)
    steps = (TWO_PI / n_phi, math.pi / (n_theta - 1), FOUR_PI / n_psi)
    return phi, theta, psi, steps


def _scan_delta(delta_rel: float, scale: float) -> float:
    if delta_rel <= 0:
        raise ParameterError("delta_rel must be positive")
    return delta_rel * scale if scale > 0 else ZERO_SCALE_DELTA


def uncertainty_experiment(
    spec,
    coeffs,
    q,
    n_cutoff: int,
    r: int,
    *,
    grid: HaarGrid | None = None,
    torus_points: int = 2048,
    box_side: float = 0.05,
    delta_rel: float = 1e-3,
    g_box_side: float = 0.5,
) -> ExperimentReport:
    """Run the whole pipeline; see the module docstring for the steps."""
    spec = tuple(sorted(int(n) for n in spec))
    q = Fraction(q)
    f = BandlimitedFunction(coeffs)
    if set(f.coeffs) != set(spec):
        raise ParameterError("coefficients must be supplied exactly on the spectrum")
    if set(f.support) != set(spec):
        raise ParameterError("every spectrum entry needs a nonzero coefficient")

    rs = build_root_system("su2")
    # The lacunarity hypothesis concerns the spectrum itself; the n -> n+1
    # shift below is torus bookkeeping for where Delta+ . F_f must live.
    spec_set = SpectrumSet.of(Weight((2 * n,)) for n in spec)
    condition = check_condition_1(rs, spec_set, q, n_cutoff, r)
    shifted = tuple(n + 1 for n in spec)
    shifted_set = SpectrumSet.of(Weight((2 * m,)) for m in shifted)
    target = orbit_of_set(rs, shifted_set)
    target_naturals = tuple(sorted(w.coords[0] // 2 for w in target))
    target_doubled = {w.coords for w in target}

    if grid is None:
        grid = grid_for_band(f.band_limit)
    ff = char_expansion(f, grid)
    product_series = weyl_denominator(rs) * ff

    stray = tuple(
        (exp, abs(c))
        for exp, c in product_series.terms()
        if abs(c) > CONTAINMENT_TOL and exp not in target_doubled
    )

    tgrid = GridSpec((torus_points,))
    scan_ff = zero_scan(ff, tgrid, box_side, _scan_delta(delta_rel, ff.norm2()))
    scan_product = zero_scan(
        product_series, tgrid, box_side, _scan_delta(delta_rel, product_series.norm2())
    )

    phi, theta, psi, steps = _g_scan_axes(g_box_side)
    g_values = np.abs(sample_on_euler_grid(f, phi, theta, psi))
    scan_g = scan_samples(
        g_values,
        steps=steps,
        lengths=(TWO_PI, math.pi, FOUR_PI),
        periodic=(True, False, True),
        box_side=g_box_side,
        delta=_scan_delta(delta_rel, f.norm2()),
    )

    report = ExperimentReport(
        spectrum=spec,
        q=q,
        n_cutoff=n_cutoff,
        r=r,
        box_side=box_side,
        delta_rel=delta_rel,
        g_box_side=g_box_side,
        torus_points=torus_points,
        grid_shape=(grid.n_phi, grid.n_theta, grid.n_psi),
        g_scan_shape=g_values.shape,
        f=f,
        condition=condition,
        shifted_spectrum=shifted,
        target_exponents=target_naturals,
        ff=ff,
        product=product_series,
        stray_terms=stray,
        scan_ff=scan_ff,
        scan_product=scan_product,
        scan_g=scan_g,
    )

    if f.is_zero:
        report.assertions = {
            "f_identically_zero": f.is_zero and not bool(ff),
            "ff_all_boxes_vanish": len(scan_ff.vanishing_boxes) == scan_ff.boxes_scanned,
            "product_all_boxes_vanish": len(scan_product.vanishing_boxes)
            == scan_product.boxes_scanned,
            "f_all_boxes_vanish_on_g": len(scan_g.vanishing_boxes) == scan_g.boxes_scanned,
        }
    else:
        report.assertions = {
            "product_spectrum_contained": not stray,
            "ff_no_vanishing_box": not scan_ff.has_vanishing_box,
            "product_no_vanishing_box": not scan_product.has_vanishing_box,
            "f_no_vanishing_box_on_g": not scan_g.has_vanishing_box,
        }
    return report


def _write_torus_trace(path: Path, series: TorusSeries, points: int) -> None:
    grid = GridSpec((points,))
    vals = np.abs(synthesize_on_grid(series, grid))
    angles = grid.axis_angles()[0]
    with open(path, "w") as fh:
        fh.write("theta,abs\n")
        for ang, v in zip(angles, vals):
            fh.write(f"{ang:.12g},{v:.12g}\n")


def _write_g_trace(path: Path, f: BandlimitedFunction, shape=(32, 17, 64)) -> None:
    phi = TWO_PI * np.arange(shape[0]) / shape[0]
    theta = np.linspace(0.0, math.pi, shape[1])
    psi = FOUR_PI * np.arange(shape[2]) / shape[2]
    vals = np.abs(sample_on_euler_grid(f, phi, theta, psi))
    with open(path, "w") as fh:
        fh.write("phi,theta,psi,abs\n")
        for i in range(shape[0]):
            for j in range(shape[1]):
                for k in range(shape[2]):
                    fh.write(
                        f"{phi[i]:.12g},{theta[j]:.12g},{psi[k]:.12g},{vals[i, j, k]:.12g}\n"
                    )


def write_report_bundle(report: ExperimentReport, out_dir) -> dict[str, str]:
    """Write report.json plus magnitude traces; returns the file paths.

    The JSON document is deterministic for a fixed configuration except for
    the top-level "timestamp" field.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    doc = report.serialize()
    doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime())
    report_path = out / "report.json"
    with open(report_path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
        fh.write("\n")
    trace_points = min(report.torus_points, 1024)
    ff_path = out / "Ff_abs.csv"
    _write_torus_trace(ff_path, report.ff, trace_points)
    prod_path = out / "product_abs.csv"
    _write_torus_trace(prod_path, report.product, trace_points)
    f_path = out / "f_abs.csv"
    _write_g_trace(f_path, report.f)
    return {
        "report": str(report_path),
        "Ff_abs": str(ff_path),
        "product_abs": str(prod_path),
        "f_abs": str(f_path),
    }
