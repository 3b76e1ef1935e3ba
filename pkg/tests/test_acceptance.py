"""Acceptance gate: ten pinned criteria, one visible verdict line each.

Each test prints `acceptance NN PASS/FAIL <name> (<detail>)` through the
captured-output escape hatch, then asserts.  Pinned reference numbers were
computed once with independent oracles (direct trigonometric evaluation,
brute-force window scans, branch-and-bound partition search) and frozen;
regression tolerance on pinned scan minima is +/-10%.
"""

import math
import time

import numpy as np
import pytest

from test_lacunary import exhaustive_min_parts, random_corpus

from lacunalab import (
    BandlimitedFunction,
    GridSpec,
    TorusSeries,
    Weight,
    analyze,
    build_root_system,
    central_average_batch,
    char_expansion,
    character_eval,
    character_series,
    first_dominant_weights,
    fourier_transform,
    grid_for_band,
    haar_grid,
    irrep_batch,
    irrep_matrix,
    make_coefficients,
    min_lacunary_cover,
    random_su2,
    synthesize,
    synthesize_on_grid,
    translate,
    uncertainty_experiment,
    weyl_denominator,
    weyl_denominator_product,
    weyl_dimension,
    weyl_integration_gram,
)

GROUPS = ("su2", "u2", "u3", "u4")

# worst-box minima pinned from the frozen seed-7 experiment run
PINNED_FF_MIN = 0.07910096009416961
PINNED_PRODUCT_MIN = 0.1569520163566277
PINNED_G_MIN = 0.08590317565659422


def verdict(capsys, idx, name, ok, detail):
    with capsys.disabled():
        print(f"acceptance {idx:02d} {'PASS' if ok else 'FAIL'} {name} ({detail})")
    assert ok, f"criterion {idx}: {name}: {detail}"


@pytest.fixture(scope="module")
def su2_root_system():
    return build_root_system("su2")


@pytest.fixture(scope="module")
def band8_grid():
    return grid_for_band(8)


@pytest.fixture(scope="module")
def lacunary_family():
    """Ten seeded band-limited functions with spectrum inside {1, 2, 4, 8}."""
    rng = np.random.default_rng(11)
    fams = []
    while len(fams) < 10:
        weights = tuple(w for w in (1, 2, 4, 8) if rng.random() < 0.6)
        if not weights:
            continue
        fams.append(
            BandlimitedFunction(
                {
                    n: rng.normal(size=(n + 1, n + 1))
                    + 1j * rng.normal(size=(n + 1, n + 1))
                    for n in weights
                }
            )
        )
    return fams


def test_criterion_01_su2_closed_form(capsys, su2_root_system):
    rs = su2_root_system
    rng = np.random.default_rng(101)
    thetas = []
    while len(thetas) < 1000:
        t = float(rng.uniform(-4 * math.pi, 4 * math.pi))
        if abs(math.sin(t)) > 1e-3:  # stay away from multiples of pi
            thetas.append(t)
    t0 = time.perf_counter()
    defect = 0.0
    dims_ok = True
    for n in range(11):
        lam = Weight((2 * n,))
        dims_ok = dims_ok and weyl_dimension(rs, lam) == n + 1
        for t in thetas:
            want = math.sin((n + 1) * t) / math.sin(t)
            defect = max(defect, abs(character_eval(rs, lam, [t]) - want))
    elapsed = time.perf_counter() - t0
    ok = defect < 1e-10 and dims_ok and elapsed < 1.0
    verdict(
        capsys, 1, "su2 characters match the sine ratio closed form", ok,
        f"defect {defect:.2e}, dims exact {dims_ok}, {elapsed:.2f}s",
    )


def test_criterion_02_denominator_identity(capsys):
    t0 = time.perf_counter()
    worst_group = "none"
    ok = True
    for gid in GROUPS:
        rs = build_root_system(gid)
        alt = weyl_denominator(rs)
        prod = weyl_denominator_product(rs)
        same = alt == prod  # exact coefficient equality, no tolerance
        integral = all(
            c.imag == 0.0 and float(c.real).is_integer() for _, c in alt.terms()
        )
        if not (same and integral):
            ok = False
            worst_group = gid
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    verdict(
        capsys, 2, "alternating-sum denominator equals product form", ok,
        f"groups {', '.join(GROUPS)}, exact integer match, {elapsed:.2f}s"
        if ok else f"first failure {worst_group}, {elapsed:.2f}s",
    )


def test_criterion_03_character_orthonormality(capsys):
    t0 = time.perf_counter()
    defects = {}
    for gid in ("su2", "u2"):
        rs = build_root_system(gid)
        weights = first_dominant_weights(rs, 5)
        gram = weyl_integration_gram(rs, weights)
        defects[gid] = float(np.abs(gram - np.eye(5)).max())
    elapsed = time.perf_counter() - t0
    defect = max(defects.values())
    ok = defect < 1e-9 and elapsed < 5.0
    verdict(
        capsys, 3, "first five characters are orthonormal", ok,
        f"gram defect su2 {defects['su2']:.2e}, u2 {defects['u2']:.2e}, {elapsed:.2f}s",
    )


def test_criterion_04_schur_orthogonality(capsys):
    t0 = time.perf_counter()
    grid = haar_grid(24, 24, 24)
    w = grid.weights
    mats = {n: irrep_batch(n, grid.nodes) for n in range(5)}
    defect = 0.0
    for n in range(5):
        for m in range(5):
            got = np.einsum("i,iab,icd->abcd", w, mats[n], mats[m].conj(), optimize=True)
            want = np.zeros_like(got)
            if n == m:
                for a in range(n + 1):
                    for b in range(n + 1):
                        want[a, b, a, b] = 1.0 / (n + 1)
            defect = max(defect, float(np.abs(got - want).max()))
    elapsed = time.perf_counter() - t0
    ok = defect < 1e-8 and elapsed < 30.0
    verdict(
        capsys, 4, "entry quadrature reproduces Schur orthogonality", ok,
        f"grid (24,24,24), n,m <= 4, defect {defect:.2e}, {elapsed:.2f}s",
    )


def test_criterion_05_inversion_round_trip(capsys, band8_grid):
    rng = np.random.default_rng(55)
    worst = 0.0
    for _ in range(20):
        weights = tuple(int(n) for n in range(9) if rng.random() < 0.4) or (int(rng.integers(0, 9)),)
        f = BandlimitedFunction(
            {
                n: rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
                for n in weights
            }
        )
        for n in weights:
            rel = float(
                np.abs(fourier_transform(f, n, band8_grid) - f.coeffs[n]).max()
                / np.abs(f.coeffs[n]).max()
            )
            worst = max(worst, rel)
    ok = worst <= 1e-8
    verdict(
        capsys, 5, "transform inverts prescribed coefficients", ok,
        f"20 families, band <= 8, worst relative error {worst:.2e}",
    )


def test_criterion_06_central_average_matches_expansion(capsys, lacunary_family, band8_grid):
    grid = GridSpec((256,))
    thetas = grid.axis_angles()[0]
    averaged = central_average_batch(lacunary_family, thetas, band8_grid)
    defect = 0.0
    for row, f in enumerate(lacunary_family):
        series = char_expansion(f, band8_grid)
        direct = synthesize(series, thetas[:, None])
        defect = max(defect, float(np.abs(averaged[row] - direct).max()))
    ok = defect < 1e-6
    verdict(
        capsys, 6, "central averages equal the character expansion", ok,
        f"10 functions, 256 grid angles, defect {defect:.2e}",
    )


def test_criterion_07_product_spectrum_containment(capsys, lacunary_family, band8_grid, su2_root_system):
    den = weyl_denominator(su2_root_system)
    grid = GridSpec((2048,))
    den_vals = synthesize_on_grid(den, grid)
    ok = True
    detail = ""
    for f in lacunary_family:
        series = char_expansion(f, band8_grid)
        symbolic = den * series
        sampled = analyze(den_vals * synthesize_on_grid(series, grid), grid)
        numeric_support = {e[0] for e, c in sampled.terms() if abs(c) > 1e-9}
        symbolic_support = {e[0] for e, c in symbolic.terms() if abs(c) > 1e-9}
        allowed = {s * 2 * (n + 1) for n in f.support for s in (1, -1)}
        if numeric_support != symbolic_support or not numeric_support <= allowed:
            ok = False
            detail = f"spec {f.support}: support {sorted(numeric_support)} vs allowed {sorted(allowed)}"
            break
    if ok:
        detail = "10 functions, sampled-product support == convolution support, contained"
    verdict(capsys, 7, "denominator product lands on shifted spectrum", ok, detail)


def test_criterion_08_cover_optimality(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(23)
    checked = 0
    ok = True
    detail = ""
    for a, q, n in random_corpus(200, rng):
        greedy = min_lacunary_cover(a, q, n).part_count
        exact = exhaustive_min_parts(a, q, n)
        checked += 1
        if greedy != exact:
            ok = False
            detail = f"set {list(a)} q={q} n={n}: greedy {greedy}, exhaustive {exact}"
            break
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60.0
    if ok:
        detail = f"{checked} random sets, greedy == branch-and-bound, {elapsed:.1f}s"
    verdict(capsys, 8, "greedy lacunary cover is optimal", ok, detail)


def test_criterion_09_no_vanishing_boxes(capsys):
    coeffs = make_coefficients((1, 2, 4, 8), "random", seed=7)
    report = uncertainty_experiment(
        (1, 2, 4, 8), coeffs, 2, 1, 1,
        torus_points=2048, box_side=0.05, delta_rel=1e-3, g_box_side=0.5,
    )
    pins = (
        (report.scan_ff, PINNED_FF_MIN),
        (report.scan_product, PINNED_PRODUCT_MIN),
        (report.scan_g, PINNED_G_MIN),
    )
    ok = report.passed and report.condition.holds
    for scan, pin in pins:
        ok = ok and not scan.has_vanishing_box
        ok = ok and abs(scan.worst_box_min - pin) <= 0.10 * pin
    verdict(
        capsys, 9, "lacunary-spectrum function never vanishes on a box", ok,
        "seed 7, torus box 0.05, group box 0.5, worst minima "
        f"{report.scan_ff.worst_box_min:.6f}/{report.scan_product.worst_box_min:.6f}/"
        f"{report.scan_g.worst_box_min:.6f} vs pins "
        f"{PINNED_FF_MIN:.6f}/{PINNED_PRODUCT_MIN:.6f}/{PINNED_G_MIN:.6f}",
    )


def test_criterion_10_translation_covariance(capsys):
    rng = np.random.default_rng(77)
    grid = grid_for_band(5)
    worst = 0.0
    support_ok = True
    for _ in range(20):
        weights = tuple(int(n) for n in range(6) if rng.random() < 0.5) or (int(rng.integers(0, 6)),)
        f = BandlimitedFunction(
            {
                n: rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
                for n in weights
            }
        )
        g = random_su2(rng)
        shifted = translate(f, g)
        translated_support = []
        for n in range(6):
            got = fourier_transform(shifted, n, grid, band_limit=f.band_limit)
            if n in f.coeffs:
                want = irrep_matrix(n, g).conj().T @ f.coeffs[n]
                worst = max(worst, float(np.abs(got - want).max()))
            if np.abs(got).max() > 1e-8:
                translated_support.append(n)
        support_ok = support_ok and tuple(translated_support) == f.support
    ok = worst < 1e-8 and support_ok
    verdict(
        capsys, 10, "translates transform by the inverse representation", ok,
        f"20 pairs, coefficient defect {worst:.2e}, supports coincide {support_ok}",
    )
