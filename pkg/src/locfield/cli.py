"""Command-line front end: parameter sweeps, single rates, plot scripts.

Subcommands
-----------
``locfield sweep``
    Run a parameter sweep from a preset or a flat key-value config file
    and write a deterministic CSV (fixed 15-significant-digit formatting,
    '.' decimal separator, LF line endings; identical config gives
    byte-identical output).
``locfield compute``
    Evaluate a single rate and print the Gamma/Gamma_0 breakdown.
``locfield plot``
    Emit a gnuplot script for a sweep CSV (solid = exact, dashed =
    linear Born, dotted = bulk reference; radial solid / tangential
    dashed when both orientations are present).

Exit codes: 0 success, 2 configuration/usage error (bad arguments,
malformed config or CSV, unusable paths), 3 numerical failure during
computation.  Per-point failures inside a sweep do not abort the run;
they leave the rate cells empty and record the message in the ``error``
column.

Config schema (flat ``key = value`` lines, ``#`` comments)::

    sweep        qR | im_chi | qL        swept variable
    lo, hi       sweep range (lo < hi); log-spaced if log = 1
    points       integer >= 2
    log          0 | 1 (default 0)
    eps_re       real part of the permittivity
    eps_im       imaginary part (ignored when sweeping im_chi)
    qr, ql, qc   sphere radius, emitter displacement, cavity radius
                 (all premultiplied by k_A; qc may be a comma list,
                 one curve set per value)
    nu           emitter clearance margin (default 0)
    methods      comma list from: exact, linear_born, uncorrected,
                 weak_absorption
    orientations comma list from: radial, tangential
    center_reference  0 | 1: add a q_L = 0 reference curve per method
    tol          quadrature tolerance (default 1e-10)

Any key can be overridden on the command line with ``--set key=value``.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import math
import sys

import numpy as np

from . import __version__, born, cavity, rates
from .errors import ConfigError, DomainError, LocfieldError

__all__ = ["PRESETS", "SweepSpec", "build_sweep", "run_sweep",
           "emit_plot_script", "main"]

_FLOAT_FMT = "{:.15g}"

_SWEPT_VARIABLES = ("qR", "im_chi", "qL")

_CONFIG_KEYS = {
    "sweep", "lo", "hi", "points", "log", "eps_re", "eps_im",
    "qr", "ql", "qc", "nu", "methods", "orientations",
    "center_reference", "tol",
}

PRESETS: dict[str, dict[str, str]] = {
    # rate vs sphere radius at the center, exact against linear Born
    "fig3a": {
        "sweep": "qR", "lo": "0.5", "hi": "10", "points": "200",
        "eps_re": "1.1", "eps_im": "1e-8", "qc": "0.01", "ql": "0",
        "methods": "exact,linear_born", "orientations": "radial",
    },
    "fig3b": {
        "sweep": "qR", "lo": "0.5", "hi": "10", "points": "200",
        "eps_re": "1.2", "eps_im": "1e-8", "qc": "0.01", "ql": "0",
        "methods": "exact,linear_born", "orientations": "radial",
    },
    # absorption-driven disagreement at fixed radius, two cavity sizes
    "fig4": {
        "sweep": "im_chi", "lo": "1e-8", "hi": "1e-6", "points": "41",
        "log": "1", "eps_re": "1.1", "qr": "2", "ql": "0",
        "qc": "0.01,0.02", "methods": "exact,linear_born",
        "orientations": "radial",
    },
    # rate vs emitter position, corrected and uncorrected
    "fig5a": {
        "sweep": "qL", "lo": "0", "hi": "0.95", "points": "96",
        "eps_re": "1.1", "eps_im": "1e-8", "qr": "1", "qc": "0.01",
        "methods": "linear_born,uncorrected",
        "orientations": "radial,tangential",
    },
    "fig5b": {
        "sweep": "qL", "lo": "0", "hi": "4.9", "points": "99",
        "eps_re": "1.1", "eps_im": "1e-8", "qr": "5", "qc": "0.01",
        "methods": "linear_born,uncorrected",
        "orientations": "radial,tangential",
    },
    # rate vs radius for an off-center emitter, center curve as reference
    "fig6a": {
        "sweep": "qR", "lo": "1.2", "hi": "10", "points": "177",
        "eps_re": "1.1", "eps_im": "1e-8", "ql": "1", "qc": "0.01",
        "methods": "linear_born", "orientations": "radial,tangential",
        "center_reference": "1",
    },
    "fig6b": {
        "sweep": "qR", "lo": "5.2", "hi": "10", "points": "97",
        "eps_re": "1.1", "eps_im": "1e-8", "ql": "5", "qc": "0.01",
        "methods": "linear_born", "orientations": "radial,tangential",
        "center_reference": "1",
    },
}


@dataclasses.dataclass(frozen=True)
class CurveSpec:
    """One CSV rate column: a method/orientation/override combination."""

    column: str
    method: str
    orientation: str
    q_C: float
    center: bool = False  # force q_L = 0 (reference curve)


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    """Validated sweep request."""

    swept_variable: str
    lo: float
    hi: float
    points: int
    log: bool
    eps_re: float
    eps_im: float
    q_R: float | None
    q_L: float
    nu: float
    tol: float
    curves: tuple[CurveSpec, ...]

    def grid(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.lo, self.hi, self.points)
        return np.linspace(self.lo, self.hi, self.points)


def _parse_float(raw: str, key: str) -> float:
    try:
        v = float(raw)
    except ValueError as exc:
        raise ConfigError(f"{key}: not a number: {raw!r}") from exc
    if not math.isfinite(v):
        raise ConfigError(f"{key}: must be finite")
    return v


def _parse_int(raw: str, key: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{key}: not an integer: {raw!r}") from exc


def _parse_flag(raw: str, key: str) -> bool:
    if raw not in ("0", "1"):
        raise ConfigError(f"{key}: expected 0 or 1, got {raw!r}")
    return raw == "1"


def parse_config_file(path: str) -> dict[str, str]:
    """Read a flat key = value config file."""
    cfg: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = text.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        cfg[key] = value
    return cfg


def apply_overrides(cfg: dict[str, str], overrides) -> dict[str, str]:
    cfg = dict(cfg)
    for item in overrides or ():
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"--set: unknown key {key!r}")
        cfg[key] = value.strip()
    return cfg


def build_sweep(cfg: dict[str, str]) -> SweepSpec:
    """Validate a raw config mapping into a SweepSpec."""
    unknown = set(cfg) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key in ("sweep", "lo", "hi", "points", "eps_re"):
        if key not in cfg:
            raise ConfigError(f"missing required config key {key!r}")
    swept = cfg["sweep"]
    if swept not in _SWEPT_VARIABLES:
        raise ConfigError(f"sweep must be one of {_SWEPT_VARIABLES}, "
                          f"got {swept!r}")
    lo = _parse_float(cfg["lo"], "lo")
    hi = _parse_float(cfg["hi"], "hi")
    points = _parse_int(cfg["points"], "points")
    log = _parse_flag(cfg.get("log", "0"), "log")
    if not lo < hi:
        raise ConfigError("need lo < hi")
    if points < 2:
        raise ConfigError("points must be >= 2 (zero-length sweeps are "
                          "not meaningful)")
    if log and lo <= 0:
        raise ConfigError("log spacing needs lo > 0")

    eps_re = _parse_float(cfg["eps_re"], "eps_re")
    eps_im = _parse_float(cfg.get("eps_im", "0"), "eps_im")
    if swept == "im_chi" and "eps_im" in cfg:
        raise ConfigError("eps_im conflicts with sweeping im_chi")
    nu = _parse_float(cfg.get("nu", "0"), "nu")
    tol = _parse_float(cfg.get("tol", "1e-10"), "tol")

    q_R = _parse_float(cfg["qr"], "qr") if "qr" in cfg else None
    q_L = _parse_float(cfg.get("ql", "0"), "ql")
    if swept == "qR" and "qr" in cfg:
        raise ConfigError("qr conflicts with sweeping qR")
    if swept == "qL" and "ql" in cfg:
        raise ConfigError("ql conflicts with sweeping qL")
    if swept != "qR" and q_R is None:
        raise ConfigError("qr is required unless it is the swept variable")

    qc_values = []
    for part in cfg.get("qc", "0.01").split(","):
        qc_values.append(_parse_float(part.strip(), "qc"))
    if len(set(qc_values)) != len(qc_values):
        raise ConfigError("duplicate qc values")

    methods = tuple(m.strip() for m in
                    cfg.get("methods", "exact").split(",") if m.strip())
    for m in methods:
        if m not in rates.METHODS:
            raise ConfigError(f"unknown method {m!r}")
    if not methods:
        raise ConfigError("methods must not be empty")
    orientations = tuple(o.strip() for o in
                         cfg.get("orientations", "radial").split(",")
                         if o.strip())
    for o in orientations:
        if o not in born.ORIENTATIONS:
            raise ConfigError(f"unknown orientation {o!r}")
    if not orientations:
        raise ConfigError("orientations must not be empty")
    center_ref = _parse_flag(cfg.get("center_reference", "0"),
                             "center_reference")
    if center_ref and swept == "qL":
        raise ConfigError("center_reference conflicts with sweeping qL")

    curves = []
    for method in methods:
        for orient in orientations:
            for qc in qc_values:
                name = f"gamma_{method}"
                if len(orientations) > 1:
                    name += f"_{orient}"
                if len(qc_values) > 1:
                    name += f"_qc{qc:g}"
                curves.append(CurveSpec(column=name, method=method,
                                        orientation=orient, q_C=qc))
        if center_ref:
            name = f"gamma_{method}_center"
            if len(qc_values) > 1:
                name += f"_qc{qc_values[0]:g}"
            curves.append(CurveSpec(column=name, method=method,
                                    orientation="radial",
                                    q_C=qc_values[0], center=True))

    return SweepSpec(swept_variable=swept, lo=lo, hi=hi, points=points,
                     log=log, eps_re=eps_re, eps_im=eps_im, q_R=q_R,
                     q_L=q_L, nu=nu, tol=tol, curves=tuple(curves))


def _fmt(value: float) -> str:
    return _FLOAT_FMT.format(float(value))


def _point_request(spec: SweepSpec, curve: CurveSpec,
                   x: float) -> rates.RateRequest:
    eps_im = spec.eps_im
    q_R = spec.q_R
    q_L = 0.0 if curve.center else spec.q_L
    if spec.swept_variable == "qR":
        q_R = x
    elif spec.swept_variable == "qL":
        q_L = 0.0 if curve.center else x
    else:
        eps_im = x
    return rates.RateRequest(eps=complex(spec.eps_re, eps_im),
                             method=curve.method, geometry="sphere",
                             q_R=q_R, q_L=q_L, q_C=curve.q_C,
                             orientation=curve.orientation, nu=spec.nu,
                             tol=spec.tol)


def run_sweep(spec: SweepSpec, output_path: str) -> None:
    """Evaluate the sweep and write the CSV.

    Per-point numerical failures leave the rate cells empty and put the
    message in the error column; the sweep continues.  Rows come out in
    sweep order.
    """
    header = ([spec.swept_variable]
              + [c.column for c in spec.curves]
              + ["bulk_reference", "validity_chi_size",
                 "validity_absorption", "error"])
    bulk_ref = cavity.gamma_bulk(spec.eps_re, model="real_cavity")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for x in spec.grid():
        cells = [_fmt(x)]
        errors = []
        validity = None
        for curve in spec.curves:
            try:
                req = _point_request(spec, curve, float(x))
                result = rates.compute(req)
            except LocfieldError as exc:
                cells.append("")
                errors.append(f"{curve.column}: {exc}")
                continue
            cells.append(_fmt(result.total_ratio))
            if validity is None:
                validity = result.validity
        cells.append(_fmt(bulk_ref))
        if validity is None:
            cells.extend(["", ""])
        else:
            cells.append("1" if validity.chi_size_ok else "0")
            cells.append("1" if validity.absorption_ok else "0")
        cells.append("; ".join(errors))
        writer.writerow(cells)
    try:
        with open(output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        raise ConfigError(f"cannot write {output_path}: {exc}") from exc


# -- plot script ---------------------------------------------------------

_METHOD_DASH = {"exact": 1, "linear_born": 2, "uncorrected": 4,
                "weak_absorption": 5}

_AXIS_LABEL = {"qR": "k_A R", "im_chi": "Im chi", "qL": "k_A l_A"}


def _parse_gamma_column(name: str):
    """Split a gamma column name into (method, orientation, suffix)."""
    body = name[len("gamma_"):]
    method = None
    for m in sorted(rates.METHODS, key=len, reverse=True):
        if body == m or body.startswith(m + "_"):
            method = m
            body = body[len(m):].lstrip("_")
            break
    if method is None:
        return None
    orientation = None
    for o in born.ORIENTATIONS:
        if body == o or body.startswith(o + "_"):
            orientation = o
            body = body[len(o):].lstrip("_")
            break
    return method, orientation, body


def emit_plot_script(csv_path: str, output_path: str | None = None) -> str:
    """Generate a gnuplot script for a sweep CSV; returns the script text.

    Curve styling follows the figure conventions: dash type by method
    (solid exact, dashed linear Born), or by orientation (solid radial,
    dashed tangential) when both orientations are present; the bulk
    reference is dotted and is omitted for position sweeps.
    """
    try:
        with open(csv_path, "r", encoding="utf-8", newline="") as fh:
            header = next(csv.reader(fh), None)
    except OSError as exc:
        raise ConfigError(f"cannot read {csv_path}: {exc}") from exc
    if not header:
        raise ConfigError(f"{csv_path}: empty file")
    if header[0] not in _SWEPT_VARIABLES:
        raise ConfigError(f"{csv_path}: unrecognized swept column "
                          f"{header[0]!r}")
    for required in ("bulk_reference", "error"):
        if required not in header:
            raise ConfigError(f"{csv_path}: missing column {required!r}")
    gamma_cols = []
    for i, name in enumerate(header):
        if name.startswith("gamma_"):
            parsed = _parse_gamma_column(name)
            if parsed is None:
                raise ConfigError(f"{csv_path}: unrecognized rate column "
                                  f"{name!r}")
            gamma_cols.append((i, name, *parsed))
    if not gamma_cols:
        raise ConfigError(f"{csv_path}: no rate columns found")

    orientations = {orient for _, _, _, orient, _ in gamma_cols
                    if orient is not None}
    by_orientation = len(orientations) > 1
    methods = []
    for _, _, method, _, _ in gamma_cols:
        if method not in methods:
            methods.append(method)

    lines = [
        f"# generated by locfield {__version__}",
        "set datafile separator ','",
        f"set xlabel '{_AXIS_LABEL[header[0]]}'",
        "set ylabel 'Gamma/Gamma_0'",
        "set key left bottom",
    ]
    plots = []
    for col, name, method, orient, suffix in gamma_cols:
        if by_orientation and orient is not None:
            dash = 1 if orient == "radial" else 2
            color = methods.index(method) + 1
        else:
            dash = _METHOD_DASH[method]
            color = methods.index(method) + 1
        if suffix == "center" or (by_orientation and orient is None):
            dash, color = 5, len(methods) + 1
        title = name[len("gamma_"):].replace("_", " ")
        plots.append(f"'{csv_path}' skip 1 using 1:{col + 1} with lines "
                     f"dt {dash} lc {color} lw 2 title '{title}'")
    if header[0] != "qL":
        bulk_col = header.index("bulk_reference") + 1
        plots.append(f"'{csv_path}' skip 1 using 1:{bulk_col} with lines "
                     f"dt 3 lc 0 lw 1 title 'bulk'")
    lines.append("plot \\\n    " + ", \\\n    ".join(plots))
    script = "\n".join(lines) + "\n"
    if output_path:
        try:
            with open(output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(script)
        except OSError as exc:
            raise ConfigError(f"cannot write {output_path}: {exc}") from exc
    return script


# -- argument parsing -----------------------------------------------------


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locfield",
        description="Local-field corrected decay rates in dielectric "
                    "bodies (all lengths premultiplied by k_A).")
    parser.add_argument("--version", action="version",
                        version=f"locfield {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep to CSV")
    src = p_sweep.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(PRESETS),
                     help="built-in sweep configuration")
    src.add_argument("--config", help="flat key-value config file")
    p_sweep.add_argument("--set", dest="overrides", action="append",
                         metavar="KEY=VALUE",
                         help="override a config key (repeatable)")
    p_sweep.add_argument("--out", help="output CSV path "
                                       "(default <preset>.csv / sweep.csv)")

    p_comp = sub.add_parser("compute", help="evaluate a single rate")
    p_comp.add_argument("--eps-re", type=float, required=True)
    p_comp.add_argument("--eps-im", type=float, default=0.0)
    p_comp.add_argument("--qr", type=float, default=None,
                        help="sphere radius; omit for bulk")
    p_comp.add_argument("--ql", type=float, default=0.0)
    p_comp.add_argument("--qc", type=float, default=0.01)
    p_comp.add_argument("--nu", type=float, default=0.0)
    p_comp.add_argument("--method", choices=rates.METHODS, default="exact")
    p_comp.add_argument("--orientation", choices=born.ORIENTATIONS,
                        default="radial")

    p_plot = sub.add_parser("plot", help="emit a gnuplot script for a CSV")
    p_plot.add_argument("--csv", required=True)
    p_plot.add_argument("--out", help="script path (default <csv>.gp)")
    return parser


def _cmd_sweep(args) -> int:
    if args.preset:
        cfg = dict(PRESETS[args.preset])
        default_out = f"{args.preset}.csv"
    else:
        cfg = parse_config_file(args.config)
        default_out = "sweep.csv"
    cfg = apply_overrides(cfg, args.overrides)
    spec = build_sweep(cfg)
    out = args.out or default_out
    run_sweep(spec, out)
    print(f"wrote {out} ({spec.points} rows, {len(spec.curves)} curves)")
    return 0


def _cmd_compute(args) -> int:
    geometry = "bulk" if args.qr is None else "sphere"
    request = rates.RateRequest(eps=complex(args.eps_re, args.eps_im),
                                method=args.method, geometry=geometry,
                                q_R=args.qr, q_L=args.ql, q_C=args.qc,
                                orientation=args.orientation, nu=args.nu)
    result = rates.compute(request)
    print(f"total_ratio = {_fmt(result.total_ratio)}")
    print(f"gamma_c_ratio = {_fmt(result.gamma_c_ratio)}")
    print(f"gamma_b_ratio = {_fmt(result.gamma_b_ratio)}")
    v = result.validity
    print(f"validity_chi_size = {_fmt(v.chi_size_value)} "
          f"({'pass' if v.chi_size_ok else 'fail'})")
    print(f"validity_absorption = {_fmt(v.absorption_value)} "
          f"({'pass' if v.absorption_ok else 'fail'})")
    return 0


def _cmd_plot(args) -> int:
    out = args.out or f"{args.csv}.gp"
    emit_plot_script(args.csv, out)
    print(f"wrote {out}")
    return 0


def main(argv=None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    # configuration phase: anything wrong here is a usage problem
    try:
        if args.command == "sweep":
            if args.preset:
                cfg = apply_overrides(dict(PRESETS[args.preset]),
                                      args.overrides)
            else:
                cfg = apply_overrides(parse_config_file(args.config),
                                      args.overrides)
            build_sweep(cfg)  # validate before any computation
        elif args.command == "compute":
            geometry = "bulk" if args.qr is None else "sphere"
            rates.RateRequest(eps=complex(args.eps_re, args.eps_im),
                              method=args.method, geometry=geometry,
                              q_R=args.qr, q_L=args.ql, q_C=args.qc,
                              orientation=args.orientation, nu=args.nu)
    except (ConfigError, DomainError) as exc:
        print(f"locfield: config error: {exc}", file=sys.stderr)
        return 2
    # computation phase
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "compute":
            return _cmd_compute(args)
        return _cmd_plot(args)
    except ConfigError as exc:
        print(f"locfield: config error: {exc}", file=sys.stderr)
        return 2
    except LocfieldError as exc:
        print(f"locfield: numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
