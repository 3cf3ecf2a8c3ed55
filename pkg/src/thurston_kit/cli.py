"""Command-line front end.

Subcommands: delta, shear, stretch, twist-width, sweep, envelope, cube,
oracle-check.  Numeric output uses 17 significant digits, CSV files use
'.' decimals and LF line endings, JSON keys are snake_case and sorted;
repeated runs with the same configuration are byte-identical.

Exit codes: 0 success, 1 computational failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bounds, cube, reconcile, torus
from .bounds import SweepGrid, format_float, run_sweep, sweep_csv, sweep_json
from .pants import (
    PantsMetric,
    PantsTriangulation,
    TwistSigns,
    delta_closed,
    delta_oracle,
    shear_coords,
)
from .stretch import FNPoint, StretchSpec, left_spec, right_spec, stretch_point, twist_width_closed

CONFIG_ENV = "THURSTON_KIT_CONFIG"

_CONFIG_KEYS = {
    "out_dir": str,
    "max_q": int,
    "epsilon": float,
    "l0_values": "floats",
    "t_max": float,
    "t_step": float,
    "base_lengths": "floats",
    "base_twists": "floats",
    "tolerance": float,
}


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    """Validated key=value configuration."""

    out_dir: str = "out"
    max_q: int = 30
    epsilon: float = bounds.DEFAULT_EPSILON
    l0_values: tuple[float, ...] = (0.1, 0.5, 1.0, 2.0, 5.0)
    t_max: float = 8.0
    t_step: float = 0.25
    base_lengths: tuple[float, ...] = (1.0, 1.0, 1.0)
    base_twists: tuple[float, ...] = (0.0, 0.0, 0.0)
    tolerance: float = 1e-9

    def validate(self) -> None:
        if self.max_q < 1:
            raise ConfigError("max_q must be at least 1")
        if not 0.0 < self.epsilon <= math.log(2.0):
            raise ConfigError("epsilon must lie in (0, log 2]")
        if any(v <= 0 for v in self.l0_values):
            raise ConfigError("l0_values must be positive")
        if self.t_max < 0 or self.t_step <= 0:
            raise ConfigError("t_max must be >= 0 and t_step > 0")
        if len(self.base_lengths) != 3 or len(self.base_twists) != 3:
            raise ConfigError("base point needs three lengths and three twists")
        if any(v <= 0 for v in self.base_lengths):
            raise ConfigError("base lengths must be positive")
        if self.tolerance <= 0:
            raise ConfigError("tolerance must be positive")

    def t_values(self) -> tuple[float, ...]:
        n = int(round(self.t_max / self.t_step))
        return tuple(i * self.t_step for i in range(n + 1))


def load_config(path: str | None) -> Config:
    cfg = Config()
    if path is None:
        path = os.environ.get(CONFIG_ENV)
    if path is None:
        cfg.validate()
        return cfg
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        kind = _CONFIG_KEYS[key]
        try:
            if kind == "floats":
                parsed: object = tuple(float(v) for v in value.split(","))
            elif kind is int:
                parsed = int(value)
            elif kind is float:
                parsed = float(value)
            else:
                parsed = value
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
        setattr(cfg, key, parsed)
    cfg.validate()
    return cfg


def _parse_signs(text: str) -> TwistSigns:
    if len(text) != 3 or any(ch not in "LR" for ch in text):
        raise ConfigError("signs must be three letters from {L, R}, e.g. LLR")
    return TwistSigns(*(1 if ch == "L" else -1 for ch in text))


def _parse_lengths(text: str, n: int = 3) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad length list {text!r}: {exc}") from exc
    if len(vals) != n:
        raise ConfigError(f"expected {n} comma-separated values, got {len(vals)}")
    return vals


def _triangulation(kind: str, cuff: int, signs: TwistSigns) -> PantsTriangulation:
    """Type for the distinguished cuff: 3sym = (2,2,2); 2sym puts the four
    leaf ends at the cuff; asym puts one end there and four at the
    cyclically next cuff."""
    ends = [0, 0, 0]
    if kind == "3sym":
        ends = [2, 2, 2]
    elif kind == "2sym":
        ends = [1, 1, 1]
        ends[cuff] = 4
    elif kind == "asym":
        ends = [1, 1, 1]
        ends[(cuff + 1) % 3] = 4
    else:
        raise ConfigError("type must be one of 3sym, 2sym, asym")
    return PantsTriangulation(tuple(ends), signs)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def cmd_delta(args: argparse.Namespace, cfg: Config) -> int:
    signs = _parse_signs(args.signs)
    cuff = args.cuff - 1
    if cuff not in (0, 1, 2):
        raise ConfigError("cuff must be 1, 2 or 3")
    tri = _triangulation(args.type, cuff, signs)
    pm = PantsMetric(*_parse_lengths(args.l))
    closed = delta_closed(pm, tri, cuff)
    oracle = delta_oracle(pm, tri, cuff)
    print(f"delta_closed={format_float(closed)}")
    print(f"delta_oracle={format_float(oracle)}")
    print(f"abs_diff={format_float(abs(closed - oracle))}")
    return 0 if abs(closed - oracle) <= cfg.tolerance else 1


def cmd_shear(args: argparse.Namespace, cfg: Config) -> int:
    signs = _parse_signs(args.signs)
    cuff = args.cuff - 1
    tri = _triangulation(args.type, cuff, signs)
    pm = PantsMetric(*_parse_lengths(args.l))
    for key, value in sorted(shear_coords(pm, tri).items()):
        print(f"{key}={format_float(value)}")
    return 0


def _spec_from_args(args: argparse.Namespace, surface: str) -> StretchSpec:
    if args.completion == "L":
        return left_spec(surface, direction=args.direction)
    return right_spec(surface, direction=args.direction)


def cmd_stretch(args: argparse.Namespace, cfg: Config) -> int:
    surface = args.surface
    n = 3 if surface == "S2" else 1
    x = FNPoint(surface, _parse_lengths(args.l, n), _parse_lengths(args.tau, n))
    spec = _spec_from_args(args, surface)
    y = stretch_point(x, spec, args.t)
    for i, (l, th) in enumerate(zip(y.lengths, y.twists)):
        print(f"curve{i + 1}: length={format_float(l)} twist={format_float(th)}")
    return 0


def cmd_twist_width(args: argparse.Namespace, cfg: Config) -> int:
    val = twist_width_closed(args.l0, args.t, args.convention)
    print(f"twist_width={format_float(val)}")
    return 0


def cmd_sweep(args: argparse.Namespace, cfg: Config) -> int:
    grid = SweepGrid(cfg.l0_values, cfg.t_values(), cfg.epsilon, cfg.max_q)
    report = run_sweep(grid)
    out = Path(cfg.out_dir)
    _write(out / "sweep.csv", sweep_csv(report))
    _write(out / "sweep_summary.json", sweep_json(report))
    print(f"wrote {out / 'sweep.csv'} and {out / 'sweep_summary.json'}")
    return 0 if report.global_bounded else 1


def cmd_envelope(args: argparse.Namespace, cfg: Config) -> int:
    t_max = args.t_max if args.t_max is not None else cfg.t_max
    max_q = args.max_q if args.max_q is not None else cfg.max_q
    n = int(round(t_max / cfg.t_step))
    ts = [i * cfg.t_step for i in range(n + 1)]
    lines = ["l0,t,d_lr,d_rl"]
    sup = -math.inf
    for l0 in cfg.l0_values:
        y = FNPoint("S11", (2.0 * l0,), (0.0,))
        for t in ts:
            d_lr, d_rl = torus.envelope_widths(y, t, max_q)
            sup = max(sup, d_lr, d_rl)
            lines.append(
                f"{format_float(l0)},{format_float(t)},{format_float(d_lr)},{format_float(d_rl)}"
            )
    out = Path(cfg.out_dir)
    _write(out / "envelope.csv", "\n".join(lines) + "\n")
    summary = {
        "empirical_bound": sup,
        "l0_values": list(cfg.l0_values),
        "t_max": t_max,
        "t_step": cfg.t_step,
        "max_q": max_q,
        "bounded": math.isfinite(sup),
    }
    _write(out / "envelope_summary.json", json.dumps(summary, indent=2, sort_keys=True, default=format_float) + "\n")
    print(f"wrote {out / 'envelope.csv'} and {out / 'envelope_summary.json'}")
    return 0 if math.isfinite(sup) else 1


def cmd_cube(args: argparse.Namespace, cfg: Config) -> int:
    x = FNPoint("S2", cfg.base_lengths, cfg.base_twists)
    labeled = cube.cloud(x)
    pts = np.array([tv.as_array() for _, tv in labeled])
    uniq, group = cube.dedupe_points(pts)
    summary = cube.hull(uniq)
    brute = cube.extreme_points_brute(uniq)
    hull_set = set(summary.vertex_indices)
    entries = [
        {
            "completion": comp.label(),
            "d_twist": [tv.da, tv.db, tv.dc],
            "extreme": group[i] in hull_set,
        }
        for i, (comp, tv) in enumerate(labeled)
    ]
    csv_lines = ["completion,d_twist_1,d_twist_2,d_twist_3,extreme"]
    for ent in entries:
        a, b, c = ent["d_twist"]
        csv_lines.append(
            f"{ent['completion']},{format_float(a)},{format_float(b)},{format_float(c)},{int(ent['extreme'])}"
        )
    hull_info = {
        "n_vertices": summary.n_vertices,
        "n_edges": summary.n_edges,
        "n_faces": summary.n_faces,
        "extreme_completions": sorted(e["completion"] for e in entries if e["extreme"]),
        "brute_force_agrees": set(brute) == hull_set,
    }
    out = Path(cfg.out_dir)
    _write(out / "cube_points.json", json.dumps(entries, indent=2, sort_keys=True, default=format_float) + "\n")
    _write(out / "cube_points.csv", "\n".join(csv_lines) + "\n")
    _write(out / "cube_hull.json", json.dumps(hull_info, indent=2, sort_keys=True) + "\n")
    print(f"wrote cube outputs to {out}")
    return 0 if hull_info["brute_force_agrees"] else 1


def cmd_oracle_check(args: argparse.Namespace, cfg: Config) -> int:
    report = reconcile.build_report()
    out = Path(cfg.out_dir)
    _write(out / "reconciliation.json", reconcile.report_json(report))
    _write(out / "reconciliation.txt", reconcile.report_text(report))
    print(reconcile.report_text(report), end="")
    return 0 if report["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thurston-kit",
        description="Shear and twist computations on hyperbolic pairs of pants, "
        "stretch-path twist evolution, envelope bound sweeps, and the "
        "stretch-vector hull.",
    )
    parser.add_argument("--config", help=f"key=value config file (or ${CONFIG_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta", help="closed-form vs constructive twist offset")
    p.add_argument("--type", required=True, choices=("3sym", "2sym", "asym"))
    p.add_argument("--l", required=True, help="three cuff lengths, e.g. 1,1,1")
    p.add_argument("--signs", required=True, help="twist directions, e.g. LLL")
    p.add_argument("--cuff", required=True, type=int, help="distinguished cuff (1-3)")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("shear", help="shear coordinates of a triangulation")
    p.add_argument("--type", required=True, choices=("3sym", "2sym", "asym"))
    p.add_argument("--l", required=True)
    p.add_argument("--signs", required=True)
    p.add_argument("--cuff", type=int, default=1)
    p.set_defaults(func=cmd_shear)

    p = sub.add_parser("stretch", help="stretch a Fenchel-Nielsen point")
    p.add_argument("--surface", choices=("S11", "S04", "S2"), default="S11")
    p.add_argument("--l", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--completion", choices=("L", "R"), default="L")
    p.add_argument("--direction", choices=("forward", "backward"), default="backward")
    p.set_defaults(func=cmd_stretch)

    p = sub.add_parser("twist-width", help="closed-form twist width")
    p.add_argument("--l0", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--convention", choices=("reconciled", "printed"), default="reconciled")
    p.set_defaults(func=cmd_twist_width)

    p = sub.add_parser("sweep", help="bound-expression sweep over the (l0, t) grid")
    p.add_argument("--grid", choices=("default", "config"), default="config")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("envelope", help="distance estimates between stretch endpoints")
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--max-q", type=int, default=None)
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("cube", help="stretch-vector cloud and hull on the genus-two surface")
    p.set_defaults(func=cmd_cube)

    p = sub.add_parser("oracle-check", help="write the convention reconciliation report")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "sweep" and args.grid == "default":
            grid = SweepGrid.default()
            cfg.l0_values = grid.l0_values
            cfg.t_max = grid.t_values[-1]
            cfg.t_step = grid.t_values[1] - grid.t_values[0]
            cfg.epsilon = grid.epsilon
        return args.func(args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
