"""Command-line entry point: ``cornerheat {coeffs,verify,report}``.

Exit codes: 0 every check passed, 1 some check failed, 2 configuration
error, 3 numerically infeasible request.
"""
from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import platform
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import metadata

import numpy as np
import scipy

from . import asymfit, expansions as ex, suites
from .errors import (ConfigError, CornerHeatError, FitError, InfeasibleError, InputError,
                     ProfileError, SolverError, TruncationError)

CSV_VERSION = "cornerheat-report-csv v1"
CSV_COLUMNS = ["suite", "check", "params", "measured", "target", "comparison",
               "tolerance", "pass"]
EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_INFEASIBLE = 0, 1, 2, 3

_SECTIONS = {
    "surface": {"kind", "K", "coeffs", "valid_radius"},
    "task": {"suite", "suites", "k", "phi", "gamma", "t_min", "t_max", "grid", "R",
             "kmax", "tol_overrides"},
    "output": {"format", "path"},
}
_MAX_WAVENUMBER = 2500.0

_ANGLE_RE = re.compile(r"^\s*(?P<num>\d+)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+))?\s*$")


def parse_angle(text):
    """Parse "2pi/3", "pi", "pi/2" (exact) or decimal radians.

    Returns ``(radians, turns)`` where ``turns`` is the exact multiple of pi
    as a Fraction, or None for decimal input.
    """
    if isinstance(text, (int, float)):
        return float(text), None
    m = _ANGLE_RE.match(str(text))
    if m:
        turns = Fraction(int(m.group("num") or 1), int(m.group("den") or 1))
        return float(turns) * math.pi, turns
    try:
        return float(text), None
    except ValueError:
        raise ConfigError(f"cannot parse angle {text!r}; use e.g. 2pi/3 or radians") from None


def _angle_data(text):
    value, turns = parse_angle(text)
    if turns is not None:
        return ex.AngleData.from_turns(turns)
    return ex.AngleData(value)


@dataclass
class RunConfig:
    """Surface, task and output settings; serializes to canonical JSON."""

    surface: dict = field(default_factory=dict)
    task: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)
    seed: int = 0

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
        unknown = set(data) - set(_SECTIONS) - {"seed"}
        if unknown:
            raise ConfigError(f"unknown config field(s): {sorted(unknown)}")
        parts = {}
        for sec, keys in _SECTIONS.items():
            val = data.get(sec, {})
            if not isinstance(val, dict):
                raise ConfigError(f"config field '{sec}' must be an object")
            bad = set(val) - keys
            if bad:
                raise ConfigError(f"unknown field(s) {sorted(bad)} in '{sec}'")
            parts[sec] = copy.deepcopy(val)
        seed = data.get("seed", 0)
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ConfigError("config field 'seed' must be an integer")
        cfg = cls(parts["surface"], parts["task"], parts["output"], seed)
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config parse error at line {exc.lineno}, column {exc.colno}: "
                              f"{exc.msg}") from None
        return cls.from_dict(data)

    def to_dict(self):
        return {"surface": self.surface, "task": self.task, "output": self.output,
                "seed": self.seed}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def validate(self):
        kind = self.surface.get("kind")
        if kind is not None and kind not in ("flat", "sphere", "hyperbolic", "poly_odd"):
            raise ConfigError(f"surface.kind: unknown kind {kind!r}")
        for i, c in enumerate(self.surface.get("coeffs", [])):
            try:
                Fraction(str(c))
            except (ValueError, ZeroDivisionError):
                raise ConfigError(f"surface.coeffs[{i}]: not a number: {c!r}") from None
        for key in ("K", "valid_radius"):
            if key in self.surface and not isinstance(self.surface[key], (int, float)):
                raise ConfigError(f"surface.{key}: must be a number")
        fmt = self.output.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"output.format: expected csv or json, got {fmt!r}")
        for key in ("phi", "gamma"):
            if key in self.task:
                vals = self.task[key] if isinstance(self.task[key], list) else [self.task[key]]
                for v in vals:
                    parse_angle(v)
        for key in ("t_min", "t_max", "R"):
            if key in self.task and not (isinstance(self.task[key], (int, float))
                                         and self.task[key] > 0):
                raise ConfigError(f"task.{key}: must be a positive number")
        if "t_min" in self.task and "t_max" in self.task \
                and self.task["t_min"] >= self.task["t_max"]:
            raise ConfigError("task.t_min must be smaller than task.t_max")
        if "k" in self.task:
            k = self.task["k"]
            if isinstance(k, bool) or not isinstance(k, int) or k < 2:
                raise ConfigError("task.k: must be an integer >= 2")
        tol = self.task.get("tol_overrides", {})
        if not isinstance(tol, dict) or set(tol) - set(suites.TOLERANCES):
            raise ConfigError(f"task.tol_overrides: keys must be among {sorted(suites.TOLERANCES)}")


def _number(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a number: {text!r}") from None


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--config", help="JSON config file (flags override it)")
    p.add_argument("--profile", choices=["flat", "sphere", "hyperbolic", "poly_odd"],
                   help="surface profile kind")
    p.add_argument("--K", type=float, help="curvature of a sphere/hyperbolic profile")
    p.add_argument("--coeffs", help="comma separated odd coefficients a3,a5,... for poly_odd")
    p.add_argument("--valid-radius", type=float)
    p.add_argument("--k", type=int, help="cone/corner order")
    p.add_argument("--phi", action="append", help="rotation angle, e.g. 2pi/3 (repeatable)")
    p.add_argument("--gamma", help="corner angle, e.g. pi/3")
    p.add_argument("--t-min", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--R", type=float, help="outer disk radius")
    p.add_argument("--kmax", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", action="append", default=[], metavar="KEY=VALUE",
                   help="override a tolerance (repeatable)")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--output", help="output file (verify) or directory (report)")


def build_parser():
    parser = argparse.ArgumentParser(prog="cornerheat",
                                     description="Heat coefficients of corners, cone points "
                                                 "and rotations, with numerical verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("coeffs", help="print closed-form coefficient triples")
    pc.add_argument("--K0", default="0", help="curvature K at the point")
    pc.add_argument("--lapK", default="0", help="Laplacian of K at the point")
    pc.add_argument("--k", type=int, action="append", help="corner/cone order (repeatable)")
    pc.add_argument("--phi", action="append", help="rotation angle (repeatable)")
    pc.add_argument("--gamma", action="append", help="general corner angle (conjectural c2)")
    pc.add_argument("--format", choices=["text", "json"], default="text")

    pv = sub.add_parser("verify", help="run one verification suite")
    pv.add_argument("suite", choices=sorted(suites.SUITES))
    _add_common(pv)

    pr = sub.add_parser("report", help="run suites and write CSV + JSON reports")
    pr.add_argument("--suites", default=None,
                    help="comma separated suite names (empty string for none)")
    _add_common(pr)
    return parser


def config_from_args(args):
    """Merge the optional config file with command-line flags (flags win)."""
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = RunConfig.from_json(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    else:
        cfg = RunConfig()
    s, t, o = cfg.surface, cfg.task, cfg.output
    if args.profile:
        if args.profile != s.get("kind"):
            s.clear()
        s["kind"] = args.profile
    if args.K is not None:
        s["K"] = args.K
    if args.coeffs:
        s["coeffs"] = [c.strip() for c in args.coeffs.split(",") if c.strip()]
    if args.valid_radius is not None:
        s["valid_radius"] = args.valid_radius
    for key in ("k", "t_min", "t_max", "R", "kmax"):
        val = getattr(args, key)
        if val is not None:
            t[key] = val
    if args.phi:
        t["phi"] = args.phi if len(args.phi) > 1 else args.phi[0]
    if args.gamma:
        t["gamma"] = args.gamma
    for item in args.tol:
        if "=" not in item:
            raise ConfigError(f"--tol expects KEY=VALUE, got {item!r}")
        key, val = item.split("=", 1)
        t.setdefault("tol_overrides", {})[key.strip()] = float(val)
    if args.format:
        o["format"] = args.format
    if args.output:
        o["path"] = args.output
    if args.seed is not None:
        cfg.seed = args.seed
    if getattr(args, "suite", None):
        t["suite"] = args.suite
    if getattr(args, "suites", None) is not None:
        t["suites"] = [x for x in args.suites.split(",") if x.strip()]
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# suite dispatch
# ---------------------------------------------------------------------------

def _phis(task):
    if "phi" not in task:
        return None
    vals = task["phi"] if isinstance(task["phi"], list) else [task["phi"]]
    return [_angle_data(v) for v in vals]


def _check_feasible(name, cfg):
    """Reject spectral requests whose eigenvalue counts would be unreasonable."""
    t = cfg.task
    if name not in ("b", "cone", "kac"):
        return
    R = float(t.get("R", 1.0))
    t_min = t.get("t_min")
    if t_min is None:
        return
    if "t_max" not in t:
        raise ConfigError("task.t_max is required when task.t_min is given")
    kmax = math.sqrt(40.0 / t_min) * R
    if kmax > _MAX_WAVENUMBER:
        raise InfeasibleError(f"t_min={t_min:g} with R={R:g} needs wavenumbers up to "
                              f"{kmax:.0f} (limit {_MAX_WAVENUMBER:.0f})")
    if name in ("b", "cone"):
        phis = _phis(t) or [ex.AngleData.from_turns(Fraction(1, 2))]
        C = min(a.C for a in phis) if name == "b" else ex.AngleData.from_order(t.get("k", 3)).C
        if t["t_max"] > (C * R) ** 2 / 16:
            raise InfeasibleError(f"t_max={t['t_max']:g} exceeds (C R)^2/16 = "
                                  f"{(C * R) ** 2 / 16:g}; boundary terms would dominate the fit")


def suite_kwargs(name, cfg):
    t = cfg.task
    tol = t.get("tol_overrides") or None
    surface = cfg.surface or None
    window = (t["t_min"], t["t_max"]) if "t_min" in t else None
    if name == "consistency":
        return {"kmax": t.get("kmax", 20), "seed": cfg.seed, "tol_overrides": tol}
    if name == "trig":
        return {"kmax": t.get("kmax", 200), "tol_overrides": tol}
    if name in ("dist", "hj"):
        return {"surfaces": [surface] if surface else None, "tol_overrides": tol}
    if name == "ell":
        return {"tol_overrides": tol}
    if name == "u1":
        return {"surface": surface, "tol_overrides": tol}
    if name == "b":
        return {"surface": surface, "phis": _phis(t), "R": t.get("R", 1.0), "t_window": window,
                "tol_overrides": tol}
    if name == "cone":
        return {"surface": surface, "k": t.get("k", 3), "R": t.get("R", 1.0),
                "t_window": window, "tol_overrides": tol}
    if name == "kac":
        kw = {"R": t.get("R", 1.0), "tol_overrides": tol}
        if "gamma" in t:
            kw["gamma"] = parse_angle(t["gamma"])[0]
        return kw
    raise ConfigError(f"unknown suite {name!r}")


def run_suite(name, cfg):
    if name not in suites.SUITES:
        raise ConfigError(f"unknown suite {name!r}; choose from {sorted(suites.SUITES)}")
    _check_feasible(name, cfg)
    kwargs = suite_kwargs(name, cfg)
    rows = suites.SUITES[name](**kwargs)
    for key in ("phi", "gamma"):
        vals = cfg.task.get(key)
        vals = vals if isinstance(vals, list) else [vals] if vals is not None else []
        if any(parse_angle(v)[1] is None for v in vals):
            for r in rows:
                r.params["decimal_radians"] = True
    return rows


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _clean(obj):
    """JSON-safe copy: non-finite floats become strings, numpy scalars become floats."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    return obj


def _fmt(x):
    x = float(x)
    return repr(x)


def checks_to_csv(rows):
    buf = io.StringIO()
    buf.write(f"# {CSV_VERSION}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([r.suite, r.name, json.dumps(_clean(r.params), sort_keys=True,
                                                separators=(",", ":")),
                    _fmt(r.measured), _fmt(r.target), r.comparison, _fmt(r.tolerance),
                    "true" if r.passed else "false"])
    return buf.getvalue()


def environment():
    try:
        version = metadata.version("artifact")
    except metadata.PackageNotFoundError:
        version = "unknown"
    return {"package_version": version, "python": platform.python_version(),
            "numpy": np.__version__, "scipy": scipy.__version__}


def build_report(cfg, rows):
    return _clean({"format": "cornerheat-report", "version": 1, "config": cfg.to_dict(),
                   "environment": environment(),
                   "checks": [r.as_dict() for r in rows],
                   "all_pass": all(r.passed for r in rows)})


def report_json(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _print_rows(rows, out, elapsed):
    for r in rows:
        flag = "PASS" if r.passed else "FAIL"
        out.write(f"{flag}  {r.suite:<11} {r.name:<28} measured={float(r.measured):.6g} "
                  f"target={float(r.target):.6g} {r.comparison} tol={float(r.tolerance):.3g}\n")
    out.write(f"{sum(r.passed for r in rows)}/{len(rows)} checks passed "
              f"in {elapsed:.2f} s\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _exact_value(triple, K, lap):
    if triple.exact is None:
        return None
    mon = {"1": Fraction(1), "K": K, "K^2": K * K, "lapK": lap}
    return [str(sum((c * mon[m] for m, c in part.items()), Fraction(0))) for part in triple.exact]


def cmd_coeffs(args, out=sys.stdout):
    K = _number(args.K0)
    lap = _number(args.lapK)
    jet = ex.CurvatureJet.symmetric(float(K), float(lap))
    entries = []

    def add(label, triple, **extra):
        entries.append({"label": label, "kind": triple.kind.value, "source": triple.source.value,
                        "values": [float(v) for v in triple.as_tuple()],
                        "exact": _exact_value(triple, K, lap), **extra})

    for k in args.k or []:
        add(f"corner k={k}", ex.corner_coeffs(jet, k), k=k)
        add(f"cone k={k}", ex.cone_coeffs(jet, k), k=k)
    for text in args.phi or []:
        ang = _angle_data(text)
        add(f"rotation phi={text}", ex.b_coeffs(jet, ang), phi=ang.phi)
    for text in args.gamma or []:
        g, _ = parse_angle(text)
        conj = ex.c2_general_conjecture(jet, g)
        entries.append({"label": f"corner gamma={text}", "kind": "corner_c",
                        "source": conj.source.value, "gamma": g,
                        "values": [ex.kac_corner(g), None, conj.value], "exact": None})
    if not entries:
        raise ConfigError("coeffs needs at least one of --k, --phi, --gamma")
    if args.format == "json":
        out.write(json.dumps({"K": str(K), "lapK": str(lap), "entries": entries},
                             sort_keys=True, indent=2) + "\n")
    else:
        out.write(f"K = {K}, lapK = {lap}\n")
        for e in entries:
            vals = ", ".join("n/a" if v is None else f"{v:.16g}" for v in e["values"])
            line = f"{e['label']:<24} {e['kind']:<10} {e['source']:<11} ({vals})"
            if e["exact"]:
                line += "  exact (" + ", ".join(e["exact"]) + ")"
            out.write(line + "\n")
    return EXIT_OK


def cmd_verify(args, out=sys.stdout):
    cfg = config_from_args(args)
    start = time.perf_counter()
    rows = run_suite(args.suite, cfg)
    _print_rows(rows, out, time.perf_counter() - start)
    path = cfg.output.get("path")
    if path:
        fmt = cfg.output.get("format", "csv")
        text = checks_to_csv(rows) if fmt == "csv" else report_json(build_report(cfg, rows))
        _write(path, text)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def cmd_report(args, out=sys.stdout):
    import os

    cfg = config_from_args(args)
    names = cfg.task.get("suites")
    if names is None:
        names = [cfg.task["suite"]] if "suite" in cfg.task else []
    for n in names:
        if n not in suites.SUITES:
            raise ConfigError(f"unknown suite {n!r}")
    rows = []
    start = time.perf_counter()
    for n in names:
        rows += run_suite(n, cfg)
    _print_rows(rows, out, time.perf_counter() - start)
    outdir = cfg.output.get("path") or "."
    try:
        os.makedirs(outdir, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory: {exc}") from None
    _write(os.path.join(outdir, "report.csv"), checks_to_csv(rows))
    _write(os.path.join(outdir, "report.json"), report_json(build_report(cfg, rows)))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from None


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    commands = {"coeffs": cmd_coeffs, "verify": cmd_verify, "report": cmd_report}
    try:
        return commands[args.command](args, out)
    except (ConfigError, InputError, ProfileError) as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG
    except (InfeasibleError, TruncationError, FitError, SolverError) as exc:
        sys.stderr.write(f"numerically infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    except CornerHeatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INFEASIBLE


def main_exit():
    """Console-script wrapper that turns the return code into the exit status."""
    sys.exit(main())
