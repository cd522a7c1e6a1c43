"""``ringspread`` command line interface.

Exit status: 0 success, 2 spec/parse errors, 3 numerical-domain errors,
4 I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from . import __version__
from .circle_state import CircleState, density
from .errors import RingSpreadError, SpecParseError
from .measures import (
    measure_c,
    measure_report,
    packet_centers,
    relation_report,
)
from .moments import (
    covariance_lz_phi,
    lz_moments,
    mean_phi,
    variance_phi,
    variance_phi_quadrature,
)
from .numerics import QuadratureConfig, ScanGrid, wrap_angle
from .specs import CATALOG, build_state, fourier_spec, load_spec

SCHEMA = 1
FORMATS = ("json", "csv", "text")
SCAN_QUANTITIES = ("mean", "variance", "cov_re", "cov_im")
FIGURES = {
    "fig1": [("p_s", "psi_s"), ("p_s2", "psi_s2"), ("p_0", "uniform")],
    "fig2": [("p_cs", "cs"), ("p_s4", "psi_s4")],
}


@dataclass(frozen=True)
class RunConfig:
    grid_n: int = 720
    quad_panels: int = 64
    output_format: str = "json"
    output_path: Optional[str] = None
    mmax_override: Optional[int] = None
    normalize: bool = False

    @property
    def grid(self) -> ScanGrid:
        return ScanGrid(self.grid_n)

    @property
    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(panels=self.quad_panels)


def num(x: float):
    """Report value: 10 significant digits, infinities as strings."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return float(f"{x:.10g}")


# -pi rounded up to 10 significant digits, the smallest reportable angle
_LOWEST_ANGLE = -3.141592653


def ang(x: float):
    """Angle for reports: wrapped into [-pi, pi) and kept there after rounding."""
    r = num(wrap_angle(x))
    if r >= math.pi or r < -math.pi:
        return _LOWEST_ANGLE
    return r


def _csv_text(rows: List[List]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _text(doc: Dict, indent: str = "") -> str:
    lines = []
    for key, val in doc.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_text(val, indent + "  "))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}:")
            for item in val:
                lines.append(indent + "  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(lines)


def _state(spec_source: str, cfg: RunConfig) -> CircleState:
    spec = load_spec(spec_source)
    state = build_state(spec, normalize=cfg.normalize, mmax=cfg.mmax_override)
    if state.label is None:
        state = CircleState(state.m_min, state.coefficients, spec_source)
    return state


# --- commands ----------------------------------------------------------------

def cmd_state(args, cfg: RunConfig) -> str:
    if args.catalog:
        entries = {name: spec.to_dict() for name, spec in CATALOG.items()}
        if cfg.output_format == "json":
            return json.dumps({"schema": SCHEMA, "catalog": entries}, indent=2)
        if cfg.output_format == "csv":
            return _csv_text([["name", "spec"]] +
                             [[k, json.dumps(v)] for k, v in entries.items()])
        return "\n".join(f"{k}: {json.dumps(v)}" for k, v in entries.items())
    if args.spec is None:
        raise SpecParseError("state: give a spec file / catalog name or --catalog")
    state = _state(args.spec, cfg)
    mean, var = lz_moments(state)
    phis = np.linspace(-np.pi, np.pi, 16, endpoint=False)
    dens = density(state, phis)
    coeffs = [{"m": int(m), "re": float(c.real), "im": float(c.imag),
               "prob": float(abs(c) ** 2)}
              for m, c in zip(state.ms, state.coefficients) if c != 0]
    if cfg.output_format == "csv":
        return _csv_text([["m", "re", "im", "prob"]] +
                         [[r["m"], repr(r["re"]), repr(r["im"]), repr(r["prob"])]
                          for r in coeffs])
    doc = {
        "schema": SCHEMA,
        "state_label": state.label,
        "state": {
            "m_min": state.m_min,
            "m_max": state.m_max,
            "norm": num(state.norm),
            "lz_mean": num(mean),
            "lz_variance": num(var),
            "coefficients": coeffs,
            "density_samples": [{"phi": ang(p), "density": num(d)}
                                for p, d in zip(phis, dens)],
            "spec": fourier_spec(state).to_dict(),
        },
    }
    if cfg.output_format == "json":
        return json.dumps(doc, indent=2)
    return _text(doc)


def _measures_doc(state: CircleState, cfg: RunConfig) -> Dict:
    grid = cfg.grid
    rep = measure_report(state, grid)
    pc = packet_centers(state, grid)
    c = measure_c(state, grid, pc)
    x_check = rep.b_argmins[0] if rep.b_argmins else 0.0
    quad_err = abs(float(variance_phi(state, x_check)) -
                   variance_phi_quadrature(state, x_check, cfg.quadrature))
    samples = np.linspace(-np.pi, np.pi, 8, endpoint=False)
    rels = relation_report(state, grid, samples, report=rep)
    return {
        "schema": SCHEMA,
        "state_label": state.label,
        "measures": {
            "tilde_sq": num(rep.tilde_sq),
            "kr_phi": num(rep.kr_phi),
            "kr_lz": num(rep.kr_lz),
            "a_measure": num(rep.a_measure),
            "b_measure": num(rep.b_measure),
            "b_argmins": [ang(x) for x in rep.b_argmins],
            "b_degenerate": rep.b_degenerate,
            "c_measure": num(rep.c_measure),
            "lz_mean": num(rep.lz_mean),
            "lz_variance": num(rep.lz_variance),
            "mean_sq_cov": num(rep.mean_sq_cov),
            "mean_sq_img": num(rep.mean_sq_img),
            "quadrature_check": num(quad_err),
        },
        "centers": _centers_doc(pc, c),
        "relations": [_relation_doc(r) for r in rels],
    }


def _centers_doc(pc, c) -> Dict:
    return {
        "status": "all-points" if pc.all_points else "finite",
        "centers": [ang(x) for x in pc.centers],
        "variances": [num(v) for v in c.center_variances],
        "selected": [ang(x) for x in c.selected],
        "centroid_angle": None if pc.centroid_angle is None else ang(pc.centroid_angle),
    }


def _relation_doc(r) -> Dict:
    return {
        "relation": r.relation,
        "phi0": None if r.phi0 is None else ang(r.phi0),
        "lhs": num(r.lhs),
        "rhs": num(r.rhs),
        "slack": num(r.slack),
        "satisfied": bool(r.satisfied),
    }


def cmd_measure(args, cfg: RunConfig) -> str:
    state = _state(args.spec, cfg)
    doc = _measures_doc(state, cfg)
    if cfg.output_format == "json":
        return json.dumps(doc, indent=2)
    if cfg.output_format == "csv":
        rows = [["field", "value"]]
        for k, v in doc["measures"].items():
            rows.append([k, ";".join(map(str, v)) if isinstance(v, list) else v])
        rows.append(["centers", doc["centers"]["status"] if doc["centers"]["status"] ==
                     "all-points" else ";".join(map(str, doc["centers"]["selected"]))])
        return _csv_text(rows)
    return _text(doc)


def cmd_scan(args, cfg: RunConfig) -> str:
    state = _state(args.spec, cfg)
    xs = cfg.grid.points
    q = args.quantity
    if q == "mean":
        vals = mean_phi(state, xs)
    elif q == "variance":
        vals = variance_phi(state, xs)
    else:
        re, im = covariance_lz_phi(state, xs)
        vals = re if q == "cov_re" else im
    if cfg.output_format == "json":
        return json.dumps({"schema": SCHEMA, "state_label": state.label, "quantity": q,
                           "phi0": xs.tolist(), "value": np.asarray(vals).tolist()},
                          indent=2)
    rows = [["phi0", f"{q}({state.label})"]]
    rows += [[repr(float(x)), repr(float(v))] for x, v in zip(xs, vals)]
    return _csv_text(rows)


def cmd_centers(args, cfg: RunConfig) -> str:
    state = _state(args.spec, cfg)
    pc = packet_centers(state, cfg.grid)
    c = measure_c(state, cfg.grid, pc)
    if cfg.output_format == "json":
        return json.dumps({"schema": SCHEMA, "state_label": state.label,
                           "centers": _centers_doc(pc, c)}, indent=2)
    if pc.all_points:
        if cfg.output_format == "csv":
            return _csv_text([["phi0", "variance", "selected"], ["all", num(c.value), "all"]])
        return f"{state.label}: all points equivalent (D = {num(c.value)})"
    sel = set(c.selected)
    rows = [[ang(x), num(v), x in sel] for x, v in zip(c.centers, c.center_variances)]
    if cfg.output_format == "csv":
        return _csv_text([["phi0", "variance", "selected"]] + rows)
    out = [f"{state.label}: {len(rows)} fixed point(s)"]
    out += [f"  phi0={x}  D={v}{'  *selected' if s else ''}" for x, v, s in rows]
    return "\n".join(out)


def cmd_relations(args, cfg: RunConfig) -> str:
    state = _state(args.spec, cfg)
    samples = np.linspace(-np.pi, np.pi, 8, endpoint=False)
    rels = [_relation_doc(r) for r in relation_report(state, cfg.grid, samples)]
    if cfg.output_format == "json":
        return json.dumps({"schema": SCHEMA, "state_label": state.label,
                           "relations": rels}, indent=2)
    header = ["relation", "phi0", "lhs", "rhs", "slack", "satisfied"]
    if cfg.output_format == "csv":
        return _csv_text([header] + [[r[h] if r[h] is not None else "" for h in header]
                                     for r in rels])
    return "\n".join(
        f"{r['relation']:<20} phi0={r['phi0']!s:<14} lhs={r['lhs']!s:<16} "
        f"rhs={r['rhs']!s:<16} slack={r['slack']!s:<16} "
        f"{'ok' if r['satisfied'] else 'VIOLATED'}"
        for r in rels)


def cmd_figure(args, cfg: RunConfig) -> str:
    out_dir = Path(cfg.output_path or ".")
    members = FIGURES[args.which]
    states = [build_state(CATALOG[name], mmax=cfg.mmax_override) for _, name in members]
    xs = cfg.grid.points
    dens_rows = [["phi"] + [col for col, _ in members]]
    cols = [density(s, xs) for s in states]
    for i, x in enumerate(xs):
        dens_rows.append([repr(float(x))] + [repr(float(c[i])) for c in cols])

    fields = ["tilde_sq", "kr_phi", "kr_lz", "a_measure", "b_measure", "c_measure",
              "lz_variance"]
    table = []
    for (col, name), s in zip(members, states):
        rep = measure_report(s, cfg.grid)
        table.append({"state": name, "column": col,
                      **{f: num(getattr(rep, f)) for f in fields}})

    files = {f"{args.which}_density.csv": _csv_text(dens_rows)}
    if cfg.output_format == "json":
        files[f"{args.which}_measures.json"] = json.dumps(
            {"schema": SCHEMA, "figure": args.which, "measures": table}, indent=2) + "\n"
    else:
        header = ["state", "column"] + fields
        files[f"{args.which}_measures.csv"] = _csv_text(
            [header] + [[row[h] for h in header] for row in table])
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out_dir / name).write_text(text, encoding="utf-8", newline="\n")
    return "\n".join(str(out_dir / name) for name in files)


# --- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, default=720, help="phi0 scan points (>= 8)")
    common.add_argument("--panels", type=int, default=64, help="quadrature panels")
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--out", default=None, help="output file (directory for figure)")
    common.add_argument("--normalize", action="store_true",
                        help="rescale non-normalized fourier coefficients")
    common.add_argument("--mmax", type=int, default=None, help="truncate to |m| <= N")

    parser = argparse.ArgumentParser(
        prog="ringspread",
        description="Position-uncertainty measures for states on the circle.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", parents=[common], help="summarize a state")
    p.add_argument("spec", nargs="?", help="spec file or catalog name")
    p.add_argument("--catalog", action="store_true", help="list built-in states")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("measure", parents=[common], help="all measures for a state")
    p.add_argument("spec")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("scan", parents=[common], help="window moment versus phi0")
    p.add_argument("spec")
    p.add_argument("quantity", choices=SCAN_QUANTITIES)
    p.set_defaults(func=cmd_scan, default_format="csv")

    p = sub.add_parser("centers", parents=[common], help="packet centres")
    p.add_argument("spec")
    p.set_defaults(func=cmd_centers, default_format="text")

    p = sub.add_parser("relations", parents=[common], help="uncertainty relations")
    p.add_argument("spec")
    p.set_defaults(func=cmd_relations, default_format="text")

    p = sub.add_parser("figure", parents=[common], help="write figure data files")
    p.add_argument("which", choices=sorted(FIGURES))
    p.set_defaults(func=cmd_figure, default_format="csv")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or getattr(args, "default_format", "json")
    try:
        cfg = RunConfig(args.grid, args.panels, fmt, args.out, args.mmax, args.normalize)
        cfg.grid, cfg.quadrature  # validate grid_n and quad_panels
        text = args.func(args, cfg)
    except RingSpreadError as exc:
        print(f"ringspread: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"ringspread: I/O error: {exc}", file=sys.stderr)
        return 4
    try:
        if cfg.output_path and args.command != "figure":
            Path(cfg.output_path).write_text(text if text.endswith("\n") else text + "\n",
                                             encoding="utf-8", newline="\n")
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        print(f"ringspread: I/O error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
