"""Command-line surface: lacunary-set queries, character tables, experiments.

Exit codes: 0 when the requested predicate or pipeline assertions hold,
1 when they fail, 2 on usage or parameter errors.  All reports are JSON on
stdout with deterministic key order.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .errors import CatalogError, DomainError, ParameterError
from .rootweyl import SpectrumSet, Weight, build_root_system
from .characters import (
    character_eval,
    character_series,
    first_dominant_weights,
    weyl_dimension,
    weyl_integration_gram,
)
from .lacunary import (
    check_condition_1,
    intset,
    is_lacunary,
    is_q_thin,
    min_lacunary_cover,
    parse_rational,
)
from .experiment import make_coefficients, uncertainty_experiment, write_report_bundle
from .su2 import grid_for_band, haar_grid

ORTHONORMALITY_TOL = 1e-9


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


def _parse_int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(p) for p in text.replace(";", ",").split(",") if p.strip())
    except ValueError as exc:
        raise ParameterError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_weight(rank: int, text: str) -> Weight:
    parts = [p for p in text.strip().strip("()").split(",") if p.strip()]
    if len(parts) != rank:
        raise ParameterError(f"weight needs {rank} coordinates, got {text!r}")
    try:
        naturals = [int(p) for p in parts]
    except ValueError as exc:
        raise ParameterError(f"weight coordinates must be integers: {text!r}") from exc
    return Weight(tuple(2 * x for x in naturals))


def _parse_weight_set(rank: int, text: str) -> SpectrumSet:
    text = text.strip()
    if not text:
        return SpectrumSet.of([])
    if rank == 1 and ";" not in text:
        return SpectrumSet.of(Weight((2 * x,)) for x in _parse_int_list(text))
    return SpectrumSet.of(_parse_weight(rank, piece) for piece in text.split(";") if piece.strip())


# ---------------------------------------------------------------------------
# lacunary subcommands


def _cmd_lacunary_check(args) -> int:
    a = intset(_parse_int_list(args.set))
    q = parse_rational(args.q)
    if args.n is None:
        verdict = is_q_thin(a, q)
        _emit({"set": list(a), "q": str(q), "q_thin": verdict})
    else:
        verdict = is_lacunary(a, q, args.n)
        _emit({"set": list(a), "q": str(q), "n": args.n, "lacunary": verdict})
    return 0 if verdict else 1


def _cmd_lacunary_cover(args) -> int:
    a = intset(_parse_int_list(args.set))
    q = parse_rational(args.q)
    cert = min_lacunary_cover(a, q, args.n)
    doc = cert.serialize()
    if args.r is not None:
        doc["max_parts"] = args.r
        doc["within"] = cert.part_count <= args.r
    _emit(doc)
    if args.r is not None and cert.part_count > args.r:
        return 1
    return 0


def _cmd_lacunary_condition1(args) -> int:
    rs = build_root_system(args.group)
    spectrum = _parse_weight_set(rs.rank, args.set)
    q = parse_rational(args.q)
    report = check_condition_1(rs, spectrum, q, args.n, args.r)
    _emit(report.serialize())
    return 0 if report.holds else 1


# ---------------------------------------------------------------------------
# character subcommand


def _cmd_character(args) -> int:
    rs = build_root_system(args.group)
    doc: dict = {"group": args.group}
    code = 0
    if args.weight is not None:
        lam = _parse_weight(rs.rank, args.weight)
        series = character_series(rs, lam)
        doc["weight"] = lam.serialize()
        doc["dimension"] = weyl_dimension(rs, lam)
        doc["series"] = series.to_records()
        if args.eval is not None:
            point = [float(p) for p in args.eval.split(",")]
            value = character_eval(rs, lam, point)
            doc["eval"] = {"point": point, "re": value.real, "im": value.imag}
    if args.verify_orthogonality:
        weights = first_dominant_weights(rs, args.count)
        gram = weyl_integration_gram(rs, weights)
        defect = float(abs(gram - np.eye(len(weights))).max())
        ok = defect < ORTHONORMALITY_TOL
        doc["orthonormality"] = {
            "count": args.count,
            "max_defect": defect,
            "tolerance": ORTHONORMALITY_TOL,
            "ok": ok,
        }
        if not ok:
            code = 1
    if args.weight is None and not args.verify_orthogonality:
        raise ParameterError("give --weight and/or --verify-orthogonality")
    _emit(doc)
    return code


# ---------------------------------------------------------------------------
# experiment subcommand


@dataclass
class ExperimentConfig:
    """Plain key = value configuration; round-trips through to_mapping."""

    group: str = "su2"
    spectrum: tuple[int, ...] = ()
    coeff_mode: str = "identity"
    seed: int = 0
    q: str = "2"
    n: int = 1
    r: int = 1
    grid_phi: int | None = None
    grid_theta: int | None = None
    grid_psi: int | None = None
    torus_points: int = 2048
    box_side: float = 0.05
    delta_rel: float = 1e-3
    g_box_side: float = 0.5
    output_dir: str = "experiment_out"

    def to_mapping(self) -> dict[str, str]:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            if f.name == "spectrum":
                v = ",".join(str(x) for x in v)
            out[f.name] = str(v)
        return out

    @classmethod
    def from_mapping(cls, raw: dict[str, str]) -> "ExperimentConfig":
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, value in raw.items():
            if key not in known:
                raise ParameterError(f"unknown config key {key!r}")
            if key == "spectrum":
                kwargs[key] = _parse_int_list(value)
            elif key in ("seed", "n", "r", "grid_phi", "grid_theta", "grid_psi", "torus_points"):
                try:
                    kwargs[key] = int(value)
                except ValueError as exc:
                    raise ParameterError(f"config key {key} must be an integer") from exc
            elif key in ("box_side", "delta_rel", "g_box_side"):
                try:
                    kwargs[key] = float(value)
                except ValueError as exc:
                    raise ParameterError(f"config key {key} must be a number") from exc
            else:
                kwargs[key] = value
        cfg = cls(**kwargs)
        if cfg.group != "su2":
            raise ParameterError("experiments run on group su2 only")
        if cfg.coeff_mode not in ("identity", "random"):
            raise ParameterError(f"unknown coeff_mode {cfg.coeff_mode!r}")
        return cfg


def parse_config_text(text: str) -> ExperimentConfig:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParameterError(f"config line {lineno} is not 'key = value': {line!r}")
        key, value = stripped.split("=", 1)
        raw[key.strip()] = value.strip()
    return ExperimentConfig.from_mapping(raw)


def _cmd_experiment(args) -> int:
    path = Path(args.config)
    if not path.exists():
        raise ParameterError(f"config file not found: {path}")
    cfg = parse_config_text(path.read_text())
    q = parse_rational(cfg.q)
    coeffs = make_coefficients(cfg.spectrum, cfg.coeff_mode, cfg.seed)
    if cfg.grid_phi or cfg.grid_theta or cfg.grid_psi:
        band = max(cfg.spectrum, default=0)
        default = grid_for_band(band)
        grid = haar_grid(
            cfg.grid_phi or default.n_phi,
            cfg.grid_theta or default.n_theta,
            cfg.grid_psi or default.n_psi,
        )
    else:
        grid = None
    report = uncertainty_experiment(
        cfg.spectrum,
        coeffs,
        q,
        cfg.n,
        cfg.r,
        grid=grid,
        torus_points=cfg.torus_points,
        box_side=cfg.box_side,
        delta_rel=cfg.delta_rel,
        g_box_side=cfg.g_box_side,
    )
    paths = write_report_bundle(report, cfg.output_dir)
    summary = report.serialize()
    summary["outputs"] = paths
    summary["config"] = cfg.to_mapping()
    _emit(summary)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lacunalab",
        description="Lacunary spectra, Weyl characters, and SU(2) uncertainty experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    lac = sub.add_parser("lacunary", help="thinness, lacunarity, covers, spectral condition")
    lsub = lac.add_subparsers(dest="subcommand", required=True)

    p = lsub.add_parser("check", help="is the set Q-thin (or lacunary, with --n)?")
    p.add_argument("--set", required=True, help="comma-separated integers")
    p.add_argument("--q", required=True, help="rational ratio bound, e.g. 2 or 3/2")
    p.add_argument("--n", type=int, default=None, help="tail cutoff; enables the lacunary test")
    p.set_defaults(func=_cmd_lacunary_check)

    p = lsub.add_parser("cover", help="minimal decomposition into lacunary parts")
    p.add_argument("--set", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=None, help="exit 1 if more parts are needed")
    p.set_defaults(func=_cmd_lacunary_cover)

    p = lsub.add_parser("condition1", help="orbit-projection cover condition for a spectrum")
    p.add_argument("--group", required=True, choices=["su2", "u2", "u3", "u4"])
    p.add_argument("--set", required=True, help="weights like '(1,2);(2,4)' (natural coords)")
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=_cmd_lacunary_condition1)

    p = sub.add_parser("character", help="character series, dimension, evaluation")
    p.add_argument("--group", required=True, choices=["su2", "u2", "u3", "u4"])
    p.add_argument("--weight", default=None, help="natural coordinates, e.g. 2 or 2,0")
    p.add_argument("--eval", default=None, help="torus angles in radians, e.g. 0.5,1.0")
    p.add_argument(
        "--verify-orthogonality",
        action="store_true",
        help="Weyl-integration Gram check over the first dominant weights",
    )
    p.add_argument("--count", type=int, default=5, help="how many weights to check")
    p.set_defaults(func=_cmd_character)

    p = sub.add_parser("experiment", help="run the uncertainty pipeline from a config file")
    p.add_argument("config", help="key = value configuration file")
    p.set_defaults(func=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParameterError, CatalogError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
