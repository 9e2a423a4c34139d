"""koenigs-shift: JSON config in, deterministic JSON or CSV report out.

    koenigs-shift <command> --config <path> [--out <path>] [--format json|csv]

Exit codes: 0 success, 1 error, 2 inconclusive classification.
"""
from __future__ import annotations

import argparse
import dataclasses
import enum
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from . import __version__
from . import criteria as cr
from . import domains as dm
from . import models as md
from .errors import ParseError, ShiftError, ValidationError

COMMANDS = ("classify", "eta", "series", "integral", "orbit", "speeds", "delta")
TABLE_COMMANDS = ("eta", "orbit", "speeds", "delta")
MODEL_COMMANDS = ("orbit", "speeds")

_ALLOWED = {
    "classify": {"domain", "tail", "j0", "Jmax", "r0", "Rmax", "tol", "searchMax"},
    "eta": {"domain", "radii", "tol"},
    "series": {"domain", "tail", "j0", "Jmax"},
    "integral": {"domain", "tail", "r0", "Rmax", "tol"},
    "orbit": {"model", "tGrid", "z"},
    "speeds": {"model", "tGrid"},
    "delta": {"domain", "point", "tGrid"},
}
_COMMON = {"command", "format"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)
    format: str = "json"

    def echo(self) -> dict:
        out = {"command": self.command, "format": self.format}
        out.update(self.options)
        return out


# ----------------------------------------------------------------- parsing


def _num(value, key, *, positive=False, integer=False, minimum=None):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{key} must be a number", key=key)
    if integer:
        if float(value) != int(value):
            raise ValidationError(f"{key} must be an integer", key=key)
        value = int(value)
    else:
        value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{key} must be finite", key=key)
    if positive and value <= 0:
        raise ValidationError(f"{key} must be positive", key=key)
    if minimum is not None and value < minimum:
        raise ValidationError(f"{key} must be at least {minimum}", key=key)
    return value


def _keys(obj, key, allowed, required=()):
    """Reject unknown keys; ``key`` is the dotted path of obj, "" at top level."""
    if not isinstance(obj, dict):
        raise ValidationError(f"{key or 'config'} must be an object", key=key or None)
    prefix = f"{key}." if key else ""
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ValidationError(f"unknown key {prefix}{extra[0]}", key=prefix + extra[0])
    for name in required:
        if name not in obj:
            raise ValidationError(f"{prefix}{name} is required", key=prefix + name)


def _complex(value, key):
    if (not isinstance(value, list) or len(value) != 2):
        raise ValidationError(f"{key} must be a [re, im] pair", key=key)
    return [_num(value[0], key), _num(value[1], key)]


def _grid(value, key):
    if isinstance(value, list):
        if not value:
            raise ValidationError(f"{key} must not be empty", key=key)
        pts = [_num(v, key) for v in value]
        if any(b < a for a, b in zip(pts, pts[1:])):
            raise ValidationError(f"{key} must be increasing", key=key)
        return pts
    _keys(value, key, {"start", "stop", "num", "spacing"}, ("start", "stop", "num"))
    desc = {
        "start": _num(value["start"], f"{key}.start"),
        "stop": _num(value["stop"], f"{key}.stop"),
        "num": _num(value["num"], f"{key}.num", integer=True, minimum=1),
        "spacing": value.get("spacing", "log"),
    }
    if desc["spacing"] not in ("log", "linear"):
        raise ValidationError(f"{key}.spacing must be log or linear", key=f"{key}.spacing")
    if desc["stop"] < desc["start"]:
        raise ValidationError(f"{key}.stop must not be below start", key=f"{key}.stop")
    if desc["spacing"] == "log" and desc["start"] <= 0:
        raise ValidationError(f"{key}.start must be positive for log spacing", key=f"{key}.start")
    return desc


def expand_grid(desc) -> list:
    if isinstance(desc, list):
        return [float(v) for v in desc]
    fn = np.geomspace if desc["spacing"] == "log" else np.linspace
    return [float(v) for v in fn(desc["start"], desc["stop"], desc["num"])]


def _domain(value, key="domain"):
    if not isinstance(value, dict) or "type" not in value:
        raise ValidationError("domain.type is required", key=f"{key}.type")
    kind = value["type"]
    if kind == "step":
        _keys(value, key, {"type", "a", "b"}, ("a", "b"))
        for name in ("a", "b"):
            if not isinstance(value[name], list):
                raise ValidationError(f"{key}.{name} must be a list", key=f"{key}.{name}")
        desc = {"type": kind, "a": [_num(v, f"{key}.a") for v in value["a"]],
                "b": [_num(v, f"{key}.b") for v in value["b"]]}
    elif kind == "graph":
        family = value.get("family")
        fields = {"xlog": {"eps"}, "power": {"p", "c"}, "table": {"knots", "slope"}}
        if family not in fields:
            raise ValidationError(f"{key}.family must be xlog, power or table", key=f"{key}.family")
        _keys(value, key, {"type", "family"} | fields[family])
        desc = {"type": kind, "family": family}
        if family == "xlog":
            desc["eps"] = _num(value.get("eps", 0.0), f"{key}.eps")
        elif family == "power":
            if "p" not in value:
                raise ValidationError(f"{key}.p is required", key=f"{key}.p")
            desc["p"] = _num(value["p"], f"{key}.p")
            desc["c"] = _num(value.get("c", 1.0), f"{key}.c")
        else:
            knots = value.get("knots")
            if not isinstance(knots, list) or not all(
                    isinstance(k, list) and len(k) == 2 for k in knots):
                raise ValidationError(f"{key}.knots must be a list of [x, g] pairs",
                                      key=f"{key}.knots")
            desc["knots"] = [[_num(x, f"{key}.knots"), _num(g, f"{key}.knots")] for x, g in knots]
            desc["slope"] = _num(value.get("slope", 0.0), f"{key}.slope")
    elif kind == "sector":
        _keys(value, key, {"type", "p", "alpha"}, ("alpha",))
        desc = {"type": kind, "p": _complex(value.get("p", [1.0, 0.0]), f"{key}.p"),
                "alpha": _num(value["alpha"], f"{key}.alpha")}
    elif kind in ("halfplane", "slitplane"):
        _keys(value, key, {"type"})
        desc = {"type": kind}
    else:
        raise ValidationError(f"unknown domain type {kind!r}", key=f"{key}.type")
    try:
        build_domain(desc)
    except ValueError as exc:
        if kind == "step":
            bad = "b" if str(exc).startswith("b ") else "a"
        else:
            bad = {"graph": "family", "sector": "alpha"}.get(kind, "type")
        raise ValidationError(str(exc), key=f"{key}.{bad}") from exc
    return desc


def _model(value, key="model"):
    if not isinstance(value, dict) or "type" not in value:
        raise ValidationError("model.type is required", key=f"{key}.type")
    kind = value["type"]
    if kind == "sector":
        _keys(value, key, {"type", "p", "alpha"}, ("alpha",))
        desc = {"type": kind, "p": _complex(value.get("p", [1.0, 0.0]), f"{key}.p"),
                "alpha": _num(value["alpha"], f"{key}.alpha")}
    elif kind in ("halfplane", "slitplane"):
        _keys(value, key, {"type"})
        desc = {"type": kind}
    else:
        raise ValidationError(f"unknown model type {kind!r}", key=f"{key}.type")
    try:
        build_model(desc)
    except ValueError as exc:
        raise ValidationError(str(exc), key=f"{key}.alpha") from exc
    return desc


def _tail(value, key="tail"):
    if not isinstance(value, dict) or "type" not in value:
        raise ValidationError("tail.type is required", key=f"{key}.type")
    kind = value["type"]
    if kind == "none":
        _keys(value, key, {"type"})
        return {"type": "none"}
    if kind == "powerlogfit":
        _keys(value, key, {"type", "window"})
        desc = {"type": kind, "window": _num(value.get("window", 16), f"{key}.window",
                                             integer=True, minimum=8)}
        return desc
    if kind == "closedform":
        params = {k: _num(v, f"{key}.{k}") for k, v in value.items() if k not in ("type", "family")}
        desc = {"type": kind, "family": value.get("family"), **params}
        try:
            build_tail(desc)
        except ValueError as exc:
            raise ValidationError(str(exc), key=f"{key}.family") from exc
        return desc
    raise ValidationError(f"unknown tail type {kind!r}", key=f"{key}.type")


def parse_config(text) -> RunConfig:
    """Parse and validate a UTF-8 JSON config, filling defaults."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"config is not UTF-8: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(raw, dict):
        raise ValidationError("config must be a JSON object")
    command = raw.get("command")
    if command not in COMMANDS:
        raise ValidationError(f"command must be one of {', '.join(COMMANDS)}", key="command")
    _keys(raw, "", _ALLOWED[command] | _COMMON)
    fmt = raw.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ValidationError("format must be json or csv", key="format")
    opts: dict[str, Any] = {}
    if command in MODEL_COMMANDS:
        if "model" not in raw:
            raise ValidationError("model is required", key="model")
        opts["model"] = _model(raw["model"])
        opts["tGrid"] = _grid(raw.get("tGrid", {"start": 1.0, "stop": 1e4, "num": 100}), "tGrid")
        if command == "orbit":
            opts["z"] = _complex(raw.get("z", [0.0, 0.0]), "z")
    else:
        if "domain" not in raw:
            raise ValidationError("domain is required", key="domain")
        opts["domain"] = _domain(raw["domain"])
    if command in ("classify", "series", "integral") and "tail" in raw:
        opts["tail"] = _tail(raw["tail"])
    if command in ("classify", "series"):
        if "j0" in raw:
            opts["j0"] = _num(raw["j0"], "j0", integer=True, minimum=1)
        opts["Jmax"] = _num(raw.get("Jmax", 100_000), "Jmax", integer=True, minimum=1)
    if command in ("classify", "integral"):
        if "r0" in raw:
            opts["r0"] = _num(raw["r0"], "r0", positive=True)
        opts["Rmax"] = _num(raw.get("Rmax", 1e4), "Rmax", positive=True)
    if command in ("classify", "integral", "eta"):
        opts["tol"] = _num(raw.get("tol", 1e-8), "tol", positive=True)
    if command == "classify":
        opts["searchMax"] = _num(raw.get("searchMax", 1e3), "searchMax", positive=True)
    if command == "eta":
        opts["radii"] = _grid(raw.get("radii", {"start": 1.0, "stop": 1e3, "num": 50}), "radii")
    if command == "delta":
        opts["point"] = _complex(raw.get("point", [1.0, 0.0]), "point")
        opts["tGrid"] = _grid(raw.get("tGrid", {"start": 1.0, "stop": 1e4, "num": 50}), "tGrid")
    return RunConfig(command, opts, fmt)


# ------------------------------------------------------------ construction


def build_domain(desc):
    kind = desc["type"]
    if kind == "step":
        return dm.StepDomain(tuple(desc["a"]), tuple(desc["b"]))
    if kind == "graph":
        fam = desc["family"]
        if fam == "xlog":
            return dm.GraphDomain(dm.XLogEps(desc["eps"]))
        if fam == "power":
            return dm.GraphDomain(dm.Power(desc["p"], desc["c"]))
        return dm.GraphDomain(dm.Table(tuple(map(tuple, desc["knots"])), desc["slope"]))
    if kind == "sector":
        return dm.VerticalSector(complex(*desc["p"]), desc["alpha"])
    if kind == "halfplane":
        return dm.HalfPlane()
    return dm.SlitPlane()


def build_model(desc):
    if desc["type"] == "sector":
        return md.VerticalSectorModel(complex(*desc["p"]), desc["alpha"])
    if desc["type"] == "halfplane":
        return md.HalfPlaneTranslation()
    return md.SlitPlaneModel()


def build_tail(desc):
    if desc["type"] == "none":
        return None
    if desc["type"] == "powerlogfit":
        return cr.PowerLogFit(desc["window"])
    params = {k: v for k, v in desc.items() if k not in ("type", "family")}
    return cr.ClosedForm(desc["family"], params)


# --------------------------------------------------------------- dispatch


_SPEED_COLUMNS = ("t", "re", "im", "v", "vO", "vT", "rho", "theta")


def _speed_table(m, grid, z):
    rows = []
    for t in grid:
        s = md.speeds(m, t)
        p = md.orbit(m, z, t)
        rows.append((t, p.real, p.imag, s.v, s.v_orth, s.v_tang, s.rho, s.theta))
    return {"columns": list(_SPEED_COLUMNS), "rows": rows}


def run(cfg: RunConfig):
    """Execute a validated config; returns (report, exit code)."""
    o = cfg.options
    cmd = cfg.command
    code = 0
    if cmd in MODEL_COMMANDS:
        m = build_model(o["model"])
        z = complex(*o["z"]) if cmd == "orbit" else 0j
        result = _speed_table(m, expand_grid(o["tGrid"]), z)
        result["semigroupClass"] = md.semigroup_class(m)
    else:
        d = build_domain(o["domain"])
        tail = build_tail(o["tail"]) if "tail" in o else None
        if cmd == "classify":
            opts = cr.ClassifyOptions(j0=o.get("j0"), j_max=o["Jmax"], r0=o.get("r0"),
                                      r_max=o["Rmax"], tol=o["tol"], tail=tail,
                                      auto_tail="tail" not in o, search_max=o["searchMax"])
            result = cr.classify_shift(d, opts)
            if result.decision is cr.Decision.INCONCLUSIVE:
                code = 2
        elif cmd == "series":
            if tail is None and "tail" not in o:
                tail = cr.default_tail(d)
            j0 = o.get("j0", max(1, int(math.floor(dm.ray_radius(d))) + 1))
            result = cr.series_criterion(d, j0, o["Jmax"], tail)
        elif cmd == "integral":
            if tail is None and "tail" not in o:
                tail = cr.default_tail(d)
            r0 = o.get("r0", float(max(1, int(math.floor(dm.ray_radius(d))) + 1)))
            result = cr.karamanlis_integral(d, r0, o["Rmax"], o["tol"], tail)
        elif cmd == "eta":
            tol = min(o["tol"], 1e-10)
            rows = [(r, dm.eta(d, r, tol)) for r in expand_grid(o["radii"])]
            result = {"columns": ["r", "eta"], "rows": rows, "tolerance": tol}
        else:
            p = complex(*o["point"])
            grid = expand_grid(o["tGrid"])
            rows = [(s.t, s.delta_plus, s.delta_minus) for s in (dm.delta_pm(d, p, t) for t in grid)]
            result = {"columns": ["t", "deltaPlus", "deltaMinus"], "rows": rows,
                      "mode": dm.classify_convergence_mode(d, p, grid)}
    report = {"command": cmd, "config": cfg.echo(), "result": result, "toolVersion": __version__}
    return report, code


# ---------------------------------------------------------- serialization


def _camel(name: str) -> str:
    special = {"v_orth": "vO", "v_tang": "vT", "r_max": "Rmax", "j_max": "Jmax"}
    if name in special:
        return special[name]
    head, *rest = name.split("_")
    return head + "".join(w.capitalize() for w in rest)


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return "%.17g" % x


def to_json(obj) -> str:
    """Byte-stable JSON: sorted keys, %.17g floats, non-finite floats as strings."""
    if isinstance(obj, enum.Enum):
        return to_json(obj.value)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return to_json({_camel(f.name): getattr(obj, f.name) for f in dataclasses.fields(obj)
                        if not f.name.startswith("_")})
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, complex):
        return to_json([obj.real, obj.imag])
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ",".join(f"{json.dumps(k)}:{to_json(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_csv(result) -> str:
    lines = [",".join(result["columns"])]
    for row in result["rows"]:
        lines.append(",".join(_fmt_float(float(v)).strip('"') for v in row))
    return "\n".join(lines) + "\n"


def render(report, fmt: str) -> str:
    if fmt == "csv":
        if report["command"] not in TABLE_COMMANDS:
            raise ValidationError("csv output is only available for table commands", key="format")
        return to_csv(report["result"])
    return to_json(report) + "\n"


def _write_atomic(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".koenigs-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _error_payload(exc) -> str:
    err = {"type": type(exc).__name__, "message": str(exc)}
    for attr in ("key", "line", "column"):
        if getattr(exc, attr, None) is not None:
            err[attr] = getattr(exc, attr)
    return to_json({"error": err}) + "\n"


def main(argv: Optional[list] = None) -> int:
    parser = argparse.ArgumentParser(prog="koenigs-shift", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True)
    parser.add_argument("--out")
    parser.add_argument("--format", choices=("json", "csv"))
    parser.add_argument("--timing", action="store_true", help="add wallTime to JSON reports")
    args = parser.parse_args(argv)
    try:
        with open(args.config, "rb") as fh:
            cfg = parse_config(fh.read())
        if cfg.command != args.command:
            raise ValidationError(
                f"config command {cfg.command!r} does not match {args.command!r}", key="command")
        if args.format:
            cfg = dataclasses.replace(cfg, format=args.format)
        start = time.perf_counter()
        report, code = run(cfg)
        if args.timing:
            report["wallTime"] = time.perf_counter() - start
        text = render(report, cfg.format)
    except (ShiftError, ValueError, OSError) as exc:
        sys.stdout.write(_error_payload(exc))
        return 1
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
