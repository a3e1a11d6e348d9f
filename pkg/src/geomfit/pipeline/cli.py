"""Command line entry point: ``geomfit fit | generate | oracle``.

Exit codes: 0 success, 2 bad input or options, 3 degenerate geometry.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from ..errors import GeomFitError, InputError
from . import FitOptions, run_fit
from .io import FORMATS, guess_format, parse_points, points_to_csv, points_to_json
from .oracle import _tangent_pair, oracle_circle, oracle_plane
from .report import SCHEMA_VERSION, dumps, _plain
from .synth import SynthSpec, generate

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", path=path) from None


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {output}: {exc.strerror}", path=output) from None


def _load_points(args):
    fmt = args.format or guess_format(args.input)
    return parse_points(_read_bytes(args.input), fmt=fmt)


def cmd_fit(args) -> int:
    options = FitOptions(mode=args.mode, tau_line=args.tau_line, tau_unique=args.tau_unique)
    options.validate()
    report = run_fit(_load_points(args), options)
    _emit(report.to_json(), args.output)
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = SynthSpec.from_json(_read_bytes(args.spec).decode("utf-8"))
    points = generate(spec)
    text = points_to_json(points) if guess_format(args.output or "") == "json" else points_to_csv(points)
    _emit(text, args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    pts = _load_points(args)
    normal, offset, objective = oracle_plane(pts)
    out = {
        "schema_version": SCHEMA_VERSION,
        "target": args.target,
        "plane": {"normal": normal, "offset": offset, "objective": objective},
    }
    if args.target == "circle":
        origin = pts.mean(axis=0)
        origin = origin - (np.dot(origin, normal) - offset) * normal
        t1, t2 = _tangent_pair(normal)
        rel = pts - origin
        uv = np.column_stack([rel @ t1, rel @ t2])
        c2, radius, cobj = oracle_circle(uv)
        out["circle"] = {
            "center": origin + c2[0] * t1 + c2[1] * t2,
            "radius": radius,
            "objective": cobj,
        }
    _emit(dumps(_plain(out)) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geomfit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit plane and circle (or line) to a point set")
    fit.add_argument("--input", required=True, help="point file, or - for stdin")
    fit.add_argument("--format", choices=FORMATS, help="default: from file extension, else csv")
    fit.add_argument("--mode", choices=("auto", "plane", "circle", "line"), default="auto")
    fit.add_argument("--tau-line", type=float, default=FitOptions.tau_line)
    fit.add_argument("--tau-unique", type=float, default=FitOptions.tau_unique)
    fit.add_argument("--output", help="report file (default stdout)")
    fit.set_defaults(func=cmd_fit)

    gen = sub.add_parser("generate", help="write a synthetic point set from a JSON spec")
    gen.add_argument("--spec", required=True)
    gen.add_argument("--output", required=True, help=".json for JSON output, CSV otherwise")
    gen.set_defaults(func=cmd_generate)

    orc = sub.add_parser("oracle", help="brute-force reference fit")
    orc.add_argument("--input", required=True)
    orc.add_argument("--format", choices=FORMATS)
    orc.add_argument("--target", choices=("plane", "circle"), required=True)
    orc.add_argument("--output")
    orc.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GeomFitError as exc:
        sys.stderr.write(json.dumps(_plain(exc.to_dict()), sort_keys=True) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
