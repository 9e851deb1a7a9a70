"""Command-line front end.

Every command resolves its configuration (defaults, then config file, then
flags), runs the requested computation, writes a JSON report to stdout and
any CSV/PGM artifacts to the output directory.  Exit codes: 0 success,
2 validation error, 3 numerical failure; errors print a machine-readable
JSON object.  Reports embed the resolved configuration, snap errors and the
tool version, and repeated invocations are served from a content-addressed
cache (artifacts are only rewritten on a cache miss).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .cache import cache_get_or_compute, cache_key
from .config import ConfigError, RunConfig, load_config_file
from .core import SampleGrid, Signal
from .duality import (
    BeyondProvenRegionsError,
    SingularSliceError,
    bspline_compact_dual,
    classify_point_g2,
    compact_window,
    janssen_residual,
)
from .frames import NotAFrameError, canonical_dual, canonical_tight, frame_bounds
from .frameset import scan_frame_set
from .hrt import (
    Configuration,
    InsufficientCoverageError,
    classify_configuration,
    extension_field,
    extension_integral,
    gramian,
)
from .lattices import SnapError, make_lattice
from .serialize import (
    field_csv,
    field_pgm,
    fmt_float,
    framemap_csv,
    framemap_pgm,
    signal_csv,
    stable_json,
    write_pgm_bytes,
)
from .stft import NearOrthogonalPairError, stft, stft_energy, stft_invert
from .wilson import (
    build_wilson_classical,
    build_wilson_general,
    make_wilson_window,
    wilson_onb_report,
    wilson_parseval_residual,
)
from .windows import WindowSpec, WraparoundError, parse_window, sample_window

VALIDATION_ERRORS = (
    ConfigError,
    SnapError,
    WraparoundError,
    ValueError,
    argparse.ArgumentError,
)
NUMERICAL_ERRORS = (
    NotAFrameError,
    SingularSliceError,
    BeyondProvenRegionsError,
    NearOrthogonalPairError,
    InsufficientCoverageError,
)

COMMANDS = [
    "stft",
    "framebounds",
    "dual",
    "tight",
    "janssen",
    "bspline-dual",
    "scan",
    "wilson",
    "hrt-gram",
    "hrt-extension",
    "classify",
]


def _parse_range(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ConfigError(f"expected a range like 0..2, got {text!r}")
    return float(lo), float(hi)


def _parse_points(text: str) -> tuple[tuple[float, float], ...]:
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        a, sep, b = chunk.partition(",")
        if not sep:
            raise ConfigError(f"expected 'a,b' pairs separated by ';', got {chunk!r}")
        pts.append((float(a), float(b)))
    if not pts:
        raise ConfigError("empty point list")
    return tuple(pts)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaborlab", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--L", type=int, default=None)
        p.add_argument("--delta", type=float, default=None)
        p.add_argument("--window", default=None)
        p.add_argument("--outdir", default=None)
        p.add_argument("--no-cache", action="store_true")
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--wrap-tol", type=float, default=None)
        return p

    p = common(sub.add_parser("framebounds", help="frame bounds of a lattice system"))
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--snap-tol", type=float, default=None)

    for name in ("dual", "tight"):
        p = common(sub.add_parser(name, help=f"canonical {name} window"))
        p.add_argument("--alpha", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--snap-tol", type=float, default=None)

    for name in ("janssen", "bspline-dual"):
        p = common(
            sub.add_parser(
                name,
                help="duality residual" if name == "janssen" else "compact dual window",
            )
        )
        p.add_argument("--alpha", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--m", default=None)

    p = common(sub.add_parser("scan", help="frame-set scan over (alpha, beta)"))
    p.add_argument("--alpha", help="range lo..hi")
    p.add_argument("--beta", help="range lo..hi")
    p.add_argument("--res", type=int)
    p.add_argument("--snap-tol", type=float, default=None)

    p = common(sub.add_parser("wilson", help="Wilson system residuals and atoms"))
    p.add_argument("--beta", type=float)
    p.add_argument("--variant", choices=["classical", "general"], default=None)

    p = common(sub.add_parser("hrt-gram", help="Gramian of a shift configuration"))
    p.add_argument("--points", help="a,b;a,b;...")

    p = common(sub.add_parser("hrt-extension", help="extension function field"))
    p.add_argument("--base", help="three points a,b;a,b;a,b")
    p.add_argument("--domain", help="range lo..hi (both axes)")
    p.add_argument("--res", type=int)

    p = common(sub.add_parser("classify", help="region or configuration labels"))
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--points", default=None)

    p = common(sub.add_parser("stft", help="phase-space transform diagnostics"))
    p.add_argument("--signal-window", default=None, help="window spec used as the test signal")

    return parser


# command parameter schema: (attribute, converter) plus which are required
_PARAM_TYPES = {
    "alpha": float,
    "beta": float,
    "snap_tol": float,
    "res": int,
    "m": str,
    "points": str,
    "base": str,
    "domain": str,
    "variant": str,
    "signal_window": str,
}
_SCAN_PARAM_TYPES = dict(_PARAM_TYPES, alpha=str, beta=str)  # ranges, not numbers
_REQUIRED = {
    "framebounds": ("alpha", "beta"),
    "dual": ("alpha", "beta"),
    "tight": ("alpha", "beta"),
    "janssen": ("alpha", "beta"),
    "bspline-dual": ("alpha", "beta"),
    "scan": ("alpha", "beta", "res"),
    "wilson": ("beta",),
    "hrt-gram": ("points",),
    "hrt-extension": ("base", "domain", "res"),
    "classify": (),
    "stft": (),
}
_DEFAULTS = {"m": "auto", "variant": "classical"}


def _merge_file_params(args, file_values: dict[str, str], log) -> None:
    """Config-file values fill unset command parameters; flags win."""
    types = _SCAN_PARAM_TYPES if args.command == "scan" else _PARAM_TYPES
    for key, conv in types.items():
        if not hasattr(args, key):
            continue
        flag_val = getattr(args, key)
        if key in file_values:
            if flag_val is None:
                setattr(args, key, conv(file_values[key]))
                log(f"config: {key} = {file_values[key]} (from file)")
            else:
                log(f"config: {key} from flags overrides file value {file_values[key]}")
    for key, default in _DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, default)
    missing = [k for k in _REQUIRED[args.command] if getattr(args, k, None) is None]
    if missing:
        raise ConfigError(f"missing required parameters for {args.command}: {missing}")


def _resolve_config(args) -> RunConfig:
    cfg = RunConfig()
    file_values: dict[str, str] = {}
    if getattr(args, "config", None):
        file_values = load_config_file(args.config)
    if "L" in file_values:
        cfg.L = int(file_values["L"])
    if "delta" in file_values:
        cfg.delta = float(file_values["delta"])
    if "window" in file_values:
        cfg.window = file_values["window"]
    if "outdir" in file_values:
        cfg.outdir = file_values["outdir"]
    if "cache" in file_values:
        cfg.cache = file_values["cache"].lower() in ("1", "true", "yes", "on")
    if "threads" in file_values:
        cfg.threads = int(file_values["threads"])
    if "wrap_tol" in file_values:
        cfg.wrap_tol = float(file_values["wrap_tol"])
    # flags override file values
    if getattr(args, "L", None) is not None:
        cfg.L = args.L
    if getattr(args, "delta", None) is not None:
        cfg.delta = args.delta
    if getattr(args, "window", None) is not None:
        cfg.window = args.window
    if getattr(args, "outdir", None) is not None:
        cfg.outdir = args.outdir
    if getattr(args, "no_cache", False):
        cfg.cache = False
    if getattr(args, "threads", None) is not None:
        cfg.threads = args.threads
    if getattr(args, "wrap_tol", None) is not None:
        cfg.wrap_tol = args.wrap_tol
    cfg.extra = dict(file_values)
    cfg.validate()
    return cfg


def _grid(cfg: RunConfig) -> SampleGrid:
    return SampleGrid(cfg.L, cfg.delta)


def _config_echo(cfg: RunConfig) -> dict:
    return {
        "L": cfg.L,
        "delta": cfg.delta,
        "window": cfg.window,
        "outdir": cfg.outdir,
        "cache": cfg.cache,
        "threads": cfg.threads,
        "wrap_tol": cfg.wrap_tol,
    }


def _lattice_echo(lat, a_err: float, b_err: float) -> dict:
    return {
        "a": lat.a,
        "b": lat.b,
        "alpha": lat.alpha,
        "beta": lat.beta,
        "redundancy": lat.redundancy,
        "alpha_snap_error": a_err,
        "beta_snap_error": b_err,
    }


def _write(outdir: str, name: str, data) -> str:
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, name)
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(path, mode) as fh:
        fh.write(data)
    return path


# ---------------------------------------------------------------------------
# Command implementations.  Each returns the result dict and writes artifacts.
# ---------------------------------------------------------------------------


def _cmd_framebounds(cfg: RunConfig, args) -> dict:
    grid = _grid(cfg)
    g = sample_window(parse_window(cfg.window), grid, wrap_tol=cfg.wrap_tol)
    lat, a_err, b_err = make_lattice(grid, args.alpha, args.beta, snap_tol=args.snap_tol)
    rep = frame_bounds(g, lat)
    return {
        "A": rep.A,
        "B": rep.B,
        "condition": rep.condition,
        "is_frame": rep.is_frame,
        "method": rep.method,
        "lattice": _lattice_echo(lat, a_err, b_err),
    }


def _cmd_dual_or_tight(cfg: RunConfig, args, which: str) -> dict:
    grid = _grid(cfg)
    g = sample_window(parse_window(cfg.window), grid, wrap_tol=cfg.wrap_tol)
    lat, a_err, b_err = make_lattice(grid, args.alpha, args.beta, snap_tol=args.snap_tol)
    if which == "dual":
        w = canonical_dual(g, lat)
    else:
        w = canonical_tight(g, lat)
    rep = frame_bounds(w, lat)
    _write(cfg.outdir, f"{which}_window.csv", signal_csv(w))
    return {
        "window_norm": w.norm,
        "system_A": rep.A,
        "system_B": rep.B,
        "artifact": f"{which}_window.csv",
        "lattice": _lattice_echo(lat, a_err, b_err),
    }


def _bspline_order(cfg: RunConfig) -> int:
    spec = parse_window(cfg.window)
    if spec.family != "bspline":
        raise ConfigError(f"this command needs a bspline window, got {spec.label()}")
    return int(spec.param)


def _cmd_bspline_dual(cfg: RunConfig, args, with_artifact: bool) -> dict:
    N = _bspline_order(cfg)
    m = args.m if args.m == "auto" else int(args.m)
    h = bspline_compact_dual(N, args.alpha, args.beta, m=m)
    g = compact_window(WindowSpec("bspline", N))
    res = janssen_residual(g, h, args.alpha, args.beta)
    out = {
        "support": [h.x_lo, h.x_hi],
        "step": h.step,
        "provenance": h.provenance,
        "janssen_residual": res,
        "alpha": args.alpha,
        "beta": args.beta,
    }
    if with_artifact:
        lines = ["x,value"]
        for xv, v in zip(h.positions(), h.samples):
            lines.append(f"{fmt_float(xv)},{fmt_float(float(np.real(v)))}")
        out["artifact"] = "compact_dual.csv"
        _write(cfg.outdir, "compact_dual.csv", "\n".join(lines) + "\n")
    return out


def _cmd_scan(cfg: RunConfig, args) -> dict:
    grid = _grid(cfg)
    spec = parse_window(cfg.window)
    fmap = scan_frame_set(
        spec,
        _parse_range(args.alpha),
        _parse_range(args.beta),
        args.res,
        grid,
        snap_tol=args.snap_tol,
        threads=cfg.threads,
        wrap_tol=cfg.wrap_tol,
    )
    _write(cfg.outdir, "frameset.csv", framemap_csv(fmap))
    _write(cfg.outdir, "frameset.pgm", framemap_pgm(fmap))
    finite = fmap.A[np.isfinite(fmap.A)]
    return {
        "cells": int(fmap.resolution**2),
        "a_min": float(finite.min()) if finite.size else None,
        "a_max": float(finite.max()) if finite.size else None,
        "artifacts": ["frameset.csv", "frameset.pgm"],
    }


def _cmd_wilson(cfg: RunConfig, args) -> dict:
    grid = _grid(cfg)
    w = make_wilson_window(parse_window(cfg.window), args.beta, grid, wrap_tol=cfg.wrap_tol)
    if args.variant == "classical":
        system = build_wilson_classical(w)
    else:
        system = build_wilson_general(w, args.beta)
    onb = wilson_onb_report(system)
    atoms_dir = os.path.join(cfg.outdir, "wilson_atoms")
    os.makedirs(atoms_dir, exist_ok=True)
    norms = []
    for i in range(system.n_atoms):
        sig = Signal(grid, system.atoms[i])
        norms.append(sig.norm)
        _write(atoms_dir, f"atom_{i:04d}.csv", signal_csv(sig))
    manifest = {
        "variant": system.variant,
        "beta": system.beta,
        "n_atoms": system.n_atoms,
        "index": [list(jm) for jm in system.index],
        "norms": norms,
    }
    _write(atoms_dir, "manifest.json", stable_json(manifest) + "\n")
    return {
        "variant": system.variant,
        "beta": system.beta,
        "n_atoms": system.n_atoms,
        "parseval_residual": wilson_parseval_residual(system),
        "gram_deviation": onb.max_gram_deviation,
        "unit_norm_defect": onb.max_unit_norm_defect,
        "is_onb": onb.is_onb,
        "artifacts": ["wilson_atoms/manifest.json"],
    }


def _cmd_hrt_gram(cfg: RunConfig, args) -> dict:
    grid = _grid(cfg)
    g = sample_window(parse_window(cfg.window), grid, wrap_tol=cfg.wrap_tol).unit()
    config = Configuration(_parse_points(args.points))
    rep = gramian(g, config)
    return {
        "n_points": len(config),
        "eigenvalues": list(map(float, rep.eigenvalues)),
        "det": rep.det,
        "condition": rep.condition,
        "independent": rep.independent,
        "independence_threshold": rep.independence_threshold,
        "labels": classify_configuration(config) if len(config) >= 2 else [],
    }


def _cmd_hrt_extension(cfg: RunConfig, args) -> dict:
    grid = _grid(cfg)
    g = sample_window(parse_window(cfg.window), grid, wrap_tol=cfg.wrap_tol)
    base = Configuration(_parse_points(args.base))
    field = extension_field(g, base, domain=_parse_range(args.domain), resolution=args.res)
    integral = extension_integral(field)
    _write(cfg.outdir, "extension_field.csv", field_csv(field))
    _write(cfg.outdir, "extension_field.pgm", field_pgm(field))
    return {
        "integral": integral,
        "F_min": float(field.F.min()),
        "F_max": float(field.F.max()),
        "base": [list(p) for p in field.base.points],
        "artifacts": ["extension_field.csv", "extension_field.pgm"],
    }


def _cmd_classify(cfg: RunConfig, args) -> dict:
    has_ab = args.alpha is not None and args.beta is not None
    if has_ab == (args.points is not None):
        raise ConfigError("pass either --alpha/--beta (region label) or --points (configuration)")
    if has_ab:
        label = classify_point_g2(args.alpha, args.beta)
        return {"alpha": args.alpha, "beta": args.beta, "label": label.value}
    config = Configuration(_parse_points(args.points))
    return {"points": [list(p) for p in config.points], "labels": classify_configuration(config)}


def _cmd_stft(cfg: RunConfig, args) -> dict:
    grid = _grid(cfg)
    g = sample_window(parse_window(cfg.window), grid, wrap_tol=cfg.wrap_tol).unit()
    sig_spec = args.signal_window or cfg.window
    f = sample_window(parse_window(sig_spec), grid, wrap_tol=cfg.wrap_tol)
    V = stft(f, g)
    energy = stft_energy(V)
    rec = stft_invert(V, g, g)
    rec_err = Signal(grid, rec.values - f.values).norm / f.norm
    mag = np.abs(V.values)
    _write(cfg.outdir, "stft_magnitude.pgm", write_pgm_bytes(mag[::-1, :], float(mag.max())))
    return {
        "signal_window": sig_spec,
        "energy": energy,
        "isometry_residual": abs(energy - f.norm**2) / f.norm**2,
        "inversion_residual": rec_err,
        "artifacts": ["stft_magnitude.pgm"],
    }


def _semantic(cfg: RunConfig, args, command: str) -> dict:
    sem = dict(_config_echo(cfg))
    sem.pop("outdir")  # artifact location does not change the result
    sem.pop("cache")
    sem.pop("threads")  # results are schedule-independent
    for key in (
        "alpha",
        "beta",
        "snap_tol",
        "m",
        "res",
        "points",
        "base",
        "domain",
        "variant",
        "signal_window",
    ):
        if hasattr(args, key) and getattr(args, key) is not None:
            sem[key] = getattr(args, key)
    sem["command"] = command
    return sem


_DASH_VALUE_FLAGS = {"--domain", "--points", "--base"}


def _merge_dash_values(argv: list[str]) -> list[str]:
    """Glue values that begin with '-' onto their flags for argparse."""
    merged = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _DASH_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            merged.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            merged.append(tok)
            i += 1
    return merged


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(_merge_dash_values(argv))
    except SystemExit as exc:
        if exc.code not in (0, None):
            print(
                stable_json({"error": {"kind": "validation", "message": "invalid arguments"}})
            )
            return 2
        return 0

    handlers = {
        "framebounds": lambda cfg: _cmd_framebounds(cfg, args),
        "dual": lambda cfg: _cmd_dual_or_tight(cfg, args, "dual"),
        "tight": lambda cfg: _cmd_dual_or_tight(cfg, args, "tight"),
        "janssen": lambda cfg: _cmd_bspline_dual(cfg, args, with_artifact=False),
        "bspline-dual": lambda cfg: _cmd_bspline_dual(cfg, args, with_artifact=True),
        "scan": lambda cfg: _cmd_scan(cfg, args),
        "wilson": lambda cfg: _cmd_wilson(cfg, args),
        "hrt-gram": lambda cfg: _cmd_hrt_gram(cfg, args),
        "hrt-extension": lambda cfg: _cmd_hrt_extension(cfg, args),
        "classify": lambda cfg: _cmd_classify(cfg, args),
        "stft": lambda cfg: _cmd_stft(cfg, args),
    }

    try:
        cfg = _resolve_config(args)
        _merge_file_params(args, cfg.extra, lambda m: print(m, file=sys.stderr))

        def compute() -> str:
            result = handlers[args.command](cfg)
            report = {
                "command": args.command,
                "version": __version__,
                "config": _config_echo(cfg),
                "result": result,
            }
            return stable_json(report)

        if cfg.cache:
            key = cache_key(args.command, _semantic(cfg, args, args.command))
            payload, hit = cache_get_or_compute(key, compute, version=__version__)
            if hit:
                print(f"cache: hit {key[:12]}", file=sys.stderr)
        else:
            payload = compute()
        print(payload)
        return 0
    except NUMERICAL_ERRORS as exc:
        print(stable_json({"error": {"kind": "numerical", "message": str(exc)}}))
        return 3
    except VALIDATION_ERRORS as exc:
        print(stable_json({"error": {"kind": "validation", "message": str(exc)}}))
        return 2
    except OSError as exc:
        print(stable_json({"error": {"kind": "validation", "message": f"I/O failure: {exc}"}}))
        return 2


def entrypoint() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
