"""Acceptance gate: the quantitative exit criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion.  Tolerances are pinned here and nowhere else.
"""

import json
import math
import time

import numpy as np
import pytest

from gaborlab import (
    Configuration,
    Lattice,
    SampleGrid,
    Signal,
    WindowSpec,
    analysis,
    bspline_compact_dual,
    build_wilson_classical,
    build_wilson_general,
    canonical_dual,
    canonical_tight,
    classify_point_g2,
    compact_window,
    extension_field,
    extension_integral,
    frame_bounds,
    gramian,
    inner,
    janssen_residual,
    least_norm_check,
    make_wilson_window,
    region_expects_frame,
    sample_window,
    scan_frame_set,
    schur_identity_check,
    stft,
    stft_energy,
    stft_invert,
    synthesis,
    taper_wilson_window,
    tf_shift,
    wilson_onb_report,
    wilson_parseval_residual,
    zak,
    zak_onb_criterion,
    zak_tightness,
)
from gaborlab.frames import FRAME_RATIO

from conftest import random_signal

GRID = SampleGrid(1024, 1 / 32)
WIDE = SampleGrid(2048, 1 / 32)


def _report(num: int, ok: bool, desc: str) -> None:
    print(f"ACCEPTANCE {num:02d} {'PASS' if ok else 'FAIL'}: {desc}")
    assert ok, f"criterion {num} failed: {desc}"


def test_criterion_01_onb_ground_truth():
    t0 = time.perf_counter()
    g = sample_window(WindowSpec("indicator", 1.0), GRID)
    lat = Lattice(32, 32, GRID)  # redundancy 1, a*b = L
    rep = frame_bounds(g, lat)
    elapsed = time.perf_counter() - t0
    ok = abs(rep.A - 1.0) < 1e-10 and abs(rep.B - 1.0) < 1e-10 and elapsed < 5.0
    _report(1, ok, f"indicator ONB A={rep.A:.2e} B={rep.B:.2e} in {elapsed:.2f}s")


def test_criterion_02_density_law():
    t0 = time.perf_counter()
    g = sample_window(WindowSpec("gaussian"), GRID)
    rep = frame_bounds(g, Lattice(64, 32, GRID))  # a b = 2048 > L
    under_ok = rep.A < 1e-12

    fmap = scan_frame_set(WindowSpec("gaussian"), (0, 2), (0, 2), 32, GRID)
    prod = fmap.alpha_snapped * fmap.beta_snapped
    is_frame = fmap.A > FRAME_RATIO * fmap.B
    low = prod <= 0.9
    high = prod >= 1.1
    checked = int(low.sum() + high.sum())
    agreed = int(np.sum(is_frame & low) + np.sum(~is_frame & high))
    elapsed = time.perf_counter() - t0
    ok = under_ok and agreed / checked >= 0.95 and elapsed < 600.0
    _report(
        2,
        ok,
        f"undersampled A={rep.A:.2e}; scan agreement {agreed}/{checked} in {elapsed:.0f}s",
    )


def test_criterion_03_duality():
    rng = np.random.default_rng(1)
    g = sample_window(WindowSpec("gaussian"), GRID)
    lat = Lattice(32, 16, GRID)  # alpha beta = 1/2
    gd = canonical_dual(g, lat)
    f = random_signal(GRID, rng)
    rec = synthesis(g, lat, analysis(gd, lat, f))
    rec_err = Signal(GRID, rec.values - f.values).norm / f.norm

    rep = frame_bounds(g, lat)
    repd = frame_bounds(gd, lat)
    bound_err = max(
        abs(repd.A - 1.0 / rep.B) * rep.B, abs(repd.B - 1.0 / rep.A) * rep.A
    )

    ln = least_norm_check(f, g, lat, trials=100, rng=rng)
    ok = rec_err < 1e-8 and bound_err < 1e-8 and ln.min_gap > 0 and ln.trials == 100
    _report(
        3,
        ok,
        f"reconstruction {rec_err:.2e}, dual-bound residual {bound_err:.2e}, "
        f"least-norm min gap {ln.min_gap:.2e}",
    )


def test_criterion_04_bspline_compact_duals():
    g2 = compact_window(WindowSpec("bspline", 2))
    results = []
    for alpha, beta, m_expect, supp in [
        (1.0, 0.5, 1, 0.5),
        (1.0, 0.7, 2, 1.5),
        (0.4, 1.5, 3, 1.0),
    ]:
        h = bspline_compact_dual(2, alpha, beta)
        res = janssen_residual(g2, h, alpha, beta)
        results.append(
            f"m={m_expect}" in h.provenance
            and abs(h.x_hi - supp) < 1e-12
            and res < 1e-8
        )
    # red line: beta = 2, alpha = 0.25 (2 alpha < 1)
    g2p = sample_window(WindowSpec("bspline", 2), GRID)
    red = frame_bounds(g2p, Lattice(8, 64, GRID))
    results.append(red.A < 1e-4)
    ok = all(results)
    _report(4, ok, f"solver regions {results[:3]}, red-line A={red.A:.2e}")


def test_criterion_05_region_pattern_reproduction():
    fmap = scan_frame_set(WindowSpec("bspline", 2), (0, 2), (0, 2), 32, GRID)
    res = fmap.resolution
    cw = fmap.alpha_targets[1] - fmap.alpha_targets[0]
    ch = fmap.beta_targets[1] - fmap.beta_targets[0]
    mismatch = 0
    checked = 0
    for i in range(res):
        for j in range(res):
            a_s, b_s = fmap.alpha_snapped[i, j], fmap.beta_snapped[i, j]
            expect = region_expects_frame(classify_point_g2(a_s, b_s))
            if expect is None:
                continue
            near_boundary = any(
                region_expects_frame(
                    classify_point_g2(max(a_s + da, 1e-9), max(b_s + db, 1e-9))
                )
                != expect
                for da in (-cw, 0.0, cw)
                for db in (-ch, 0.0, ch)
            )
            if near_boundary:
                continue
            checked += 1
            numeric = bool(fmap.A[i, j] > FRAME_RATIO * fmap.B[i, j])
            if numeric != expect:
                mismatch += 1
    ok = mismatch == 0 and checked > 500
    _report(5, ok, f"g2 scan: {mismatch} mismatches on {checked} interior cells")


def test_criterion_06_wilson_equivalence():
    w = make_wilson_window(WindowSpec("gaussian"), 0.5, GRID)
    onb = wilson_onb_report(build_wilson_classical(w))
    classical_ok = onb.max_gram_deviation < 1e-8

    residuals = {}
    residuals["1/2"] = wilson_parseval_residual(build_wilson_general(w, 0.5))
    residuals["1/4"] = wilson_parseval_residual(
        build_wilson_general(taper_wilson_window(0.25, GRID).unit(), 0.25)
    )
    grid3 = SampleGrid(1152, 1 / 36)  # beta = 1/3 exactly representable here
    residuals["1/3"] = wilson_parseval_residual(
        build_wilson_general(taper_wilson_window(1 / 3, grid3).unit(), 1 / 3)
    )
    parseval_ok = all(r < 1e-8 for r in residuals.values())

    raw = sample_window(WindowSpec("gaussian"), GRID).unit()
    non_tight_classical = wilson_parseval_residual(build_wilson_classical(raw))
    non_tight_general = wilson_parseval_residual(build_wilson_general(raw, 0.5))
    fail_ok = non_tight_classical > 0.01 and non_tight_general > 0.01

    ok = classical_ok and parseval_ok and fail_ok
    _report(
        6,
        ok,
        f"ONB gram {onb.max_gram_deviation:.2e}; parseval {residuals}; "
        f"non-tight {non_tight_classical:.3f}/{non_tight_general:.3f}",
    )


def test_criterion_07_zak_criteria():
    rng = np.random.default_rng(2)
    f = random_signal(GRID, rng)
    Z = zak(f, 64)
    unitarity = abs(Z.energy() - f.norm**2) / f.norm**2

    g = sample_window(WindowSpec("gaussian"), GRID)
    gt = canonical_tight(g, Lattice(32, 16, GRID))
    flat = zak_tightness(gt).flatness
    raw_flat = zak_tightness(g).flatness

    w = make_wilson_window(WindowSpec("gaussian"), 0.5, GRID)
    dev = zak_onb_criterion(w).deviation

    ok = unitarity < 1e-12 and flat < 1e-8 and raw_flat > 0.01 and dev < 1e-6
    _report(
        7,
        ok,
        f"unitarity {unitarity:.2e}, tight flatness {flat:.2e}, ONB deviation {dev:.2e}",
    )


def _extension_value_at(g, base, point):
    fam = [tf_shift(g, p) for p in base.points]
    A = np.array([[inner(a, b) for b in fam] for a in fam]).T
    extra = tf_shift(g, point)
    u = np.array([inner(f, extra) for f in fam])
    return float(np.real(np.conj(u) @ np.linalg.solve(A, u)))


def test_criterion_08_hrt_suite():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    families = [
        WindowSpec("gaussian"),
        WindowSpec("sech"),
        WindowSpec("exp_two_sided"),
        WindowSpec("exp_one_sided"),
        WindowSpec("indicator", 1.0),
        WindowSpec("bspline", 2),
    ]
    windows = [sample_window(spec, WIDE).unit() for spec in families]
    n_checked = 0
    all_independent = True
    for trial in range(200):
        pts = rng.uniform(-2, 2, size=(3, 2))
        while min(
            np.linalg.norm(pts[a] - pts[b]) for a in range(3) for b in range(a + 1, 3)
        ) < 0.1:
            pts = rng.uniform(-2, 2, size=(3, 2))
        cfg = Configuration(tuple(map(tuple, pts)))
        g = windows[trial % len(windows)]
        rep = gramian(g, cfg)
        n_checked += 1
        if rep.eigenvalues[0] <= rep.independence_threshold:
            all_independent = False

    base = Configuration(((0.0, 0.0), (0.0, 1.0), (1.0, 0.0)))
    schur_worst = 0.0
    for g in windows:
        for p in [(0.3, -0.4), (1.7, 2.2), (-0.9, 0.1)]:
            schur_worst = max(schur_worst, schur_identity_check(g, base, p))
    gg = sample_window(WindowSpec("gaussian"), GRID).unit()
    field = extension_field(gg, base, domain=(-6, 6), resolution=240)
    f_range_ok = field.F.min() >= 0.0 and field.F.max() <= 1.0 + 1e-10
    base_vals = [_extension_value_at(gg, base, p) for p in base.points]
    base_ok = all(abs(v - 1.0) < 1e-8 for v in base_vals)
    integral = extension_integral(field)
    integral_ok = abs(integral - 3.0) / 3.0 < 0.02

    s2, s3 = math.sqrt(2), math.sqrt(3)
    fine = SampleGrid(2048, 1 / 64)
    gf = sample_window(WindowSpec("gaussian"), fine).unit()
    q_ok = True
    drift_ok = True
    for last in ((s2, s2), (s2, s3)):
        cfg = Configuration(((0, 0), (0, 1), (1, 0), last))
        coarse = gramian(gg, cfg).eigenvalues[0]
        refined = gramian(gf, cfg).eigenvalues[0]
        q_ok = q_ok and coarse > 1e-3
        drift_ok = drift_ok and abs(refined - coarse) / coarse < 0.10
    elapsed = time.perf_counter() - t0
    ok = (
        all_independent
        and n_checked == 200
        and schur_worst < 1e-12
        and f_range_ok
        and base_ok
        and integral_ok
        and q_ok
        and drift_ok
        and elapsed < 900.0
    )
    _report(
        8,
        ok,
        f"200x6 gramians independent={all_independent}, schur {schur_worst:.2e}, "
        f"integral {integral:.4f}, question-set floors ok={q_ok}, "
        f"drift ok={drift_ok}, {elapsed:.0f}s",
    )


def test_criterion_09_stft():
    rng = np.random.default_rng(4)
    g = sample_window(WindowSpec("gaussian"), GRID).unit()
    f = random_signal(GRID, rng)
    V = stft(f, g)
    iso = abs(stft_energy(V) - f.norm**2) / f.norm**2

    h = sample_window(WindowSpec("sech"), WIDE)
    gw = sample_window(WindowSpec("gaussian"), WIDE).unit()
    overlap = abs(inner(gw, h))
    fw = random_signal(WIDE, rng)
    rec = stft_invert(stft(fw, gw), gw, h)
    inv = Signal(WIDE, rec.values - fw.values).norm / fw.norm
    ok = iso < 1e-6 and overlap > 0.1 and inv < 1e-6
    _report(9, ok, f"isometry {iso:.2e}, inversion {inv:.2e} (|<g,h>|={overlap:.2f})")


def test_criterion_10_engineering(tmp_path, monkeypatch, capsys):
    from gaborlab.cli import run
    from gaborlab.frameset import scan_frame_set as scan
    from gaborlab.serialize import framemap_csv, framemap_pgm

    small = SampleGrid(256, 1 / 16)
    maps = [
        scan(WindowSpec("bspline", 2), (0, 2), (0, 2), 8, small, threads=t) for t in (1, 4)
    ]
    deterministic = framemap_csv(maps[0]) == framemap_csv(maps[1]) and framemap_pgm(
        maps[0]
    ) == framemap_pgm(maps[1])

    monkeypatch.setenv("GABORLAB_CACHE_DIR", str(tmp_path / "cache"))
    argv = [
        "framebounds",
        "--window",
        "indicator:1",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--outdir",
        str(tmp_path),
    ]
    assert run(argv) == 0
    first = capsys.readouterr()
    assert run(argv) == 0
    second = capsys.readouterr()
    cache_ok = first.out == second.out and "cache: hit" in second.err
    report = json.loads(first.out)
    audit_ok = (
        report["version"] == "0.1.0"
        and report["config"]["L"] == 1024
        and "alpha_snap_error" in report["result"]["lattice"]
    )
    ok = deterministic and cache_ok and audit_ok
    _report(
        10,
        ok,
        f"thread determinism={deterministic}, cache hit={cache_ok}, audit trail={audit_ok}",
    )
