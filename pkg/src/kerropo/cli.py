"""Command-line interface.

Subcommands:
  run <config.json>            execute one scenario
  preset <name>                run a named preset (or --emit-config)
  sweep <config.json> --axis k=v1,v2,...   Cartesian parameter sweep
  constraints <material.json>  evaluate the five device constraints

Exit codes: 0 success, 1 validation error, 2 numeric-guard failure,
3 constraint report failed (constraints subcommand only).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import NumericGuardError, ValidationError
from .materials import MaterialSpec, full_report
from .presets import preset, preset_names
from .runner import run, sweep


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None


def _parse_axis(text: str) -> tuple[str, list]:
    if "=" not in text:
        raise ValidationError(f"--axis {text!r}: expected path=v1,v2,...")
    path, _, values = text.partition("=")
    parsed = []
    for chunk in values.split(","):
        try:
            parsed.append(json.loads(chunk))
        except json.JSONDecodeError:
            parsed.append(chunk)
    return path, parsed


def _cmd_run(args) -> int:
    config = _load_json(args.config)
    out = args.out or os.path.join("runs", config.get("name") or "run")
    result = run(config, out, args.format)
    print(f"wrote {out} (config {result.meta['config_hash']})")
    return 0


def _cmd_preset(args) -> int:
    cfg = preset(args.name)
    if args.emit_config:
        json.dump(cfg, sys.stdout, indent=2, sort_keys=True)
        print()
        return 0
    out = args.out or os.path.join("runs", args.name)
    if "material" in cfg:
        return _run_constraints(cfg["material"], out, args.format)
    if "axes" in cfg:
        res = sweep(cfg["config"], cfg["axes"], out, workers=args.workers,
                    fmt=args.format)
        print(f"wrote {out} ({len(res['rows'])} sweep rows)")
        return 0
    result = run(cfg, out, args.format)
    print(f"wrote {out} (config {result.meta['config_hash']})")
    return 0


def _cmd_sweep(args) -> int:
    config = _load_json(args.config)
    axes = dict(_parse_axis(a) for a in args.axis)
    out = args.out or os.path.join("runs", "sweep")
    res = sweep(config, axes, out, workers=args.workers, fmt=args.format)
    print(f"wrote {out} ({len(res['rows'])} rows, {len(res['errors'])} failures)")
    return 0 if not res["errors"] else 2


def _run_constraints(material: dict, out: str | None, fmt: str) -> int:
    spec = MaterialSpec.from_dict(material)
    report = full_report(spec)
    print(report.to_text())
    if out:
        os.makedirs(out, exist_ok=True)
        with open(os.path.join(out, "constraints.json"), "w") as fh:
            fh.write(report.to_json())
        with open(os.path.join(out, "constraints.txt"), "w") as fh:
            fh.write(report.to_text() + "\n")
    return 0 if report.overall_pass else 3


def _cmd_constraints(args) -> int:
    material = _load_json(args.material)
    if "material" in material:
        material = material["material"]
    return _run_constraints(material, args.out, args.format)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="kerropo", description=__doc__)
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a scenario config")
    p.add_argument("config")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("preset", help=f"run a preset: {', '.join(preset_names())}")
    p.add_argument("name")
    p.add_argument("--emit-config", action="store_true")
    p.set_defaults(func=_cmd_preset)

    p = sub.add_parser("sweep", help="Cartesian sweep over config fields")
    p.add_argument("config")
    p.add_argument("--axis", action="append", required=True,
                   help="dotted.path=v1,v2,...")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("constraints", help="evaluate material constraints")
    p.add_argument("material")
    p.set_defaults(func=_cmd_constraints)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericGuardError as exc:
        print(f"numeric guard: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
