"""Command-line front end.

Exit codes: 0 the profile is constructible (a sample parameter point is
printed), 2 it is obstructed (a certificate is printed), 1 the input is
malformed or structurally inconsistent.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .affine import Affine
from .catalog import TEMPLATES, CatalogError, compare, expected_outcome, instantiate
from .crossing import Profile, ProfileError, run_profile
from .document import (REPORT_SCHEMA, dump_document, load_document, render_text,
                       report_document)
from .feasibility import EQ, Constraint, eliminate

EXIT_FEASIBLE, EXIT_MALFORMED, EXIT_INFEASIBLE = 0, 1, 2
DEFAULT_NORMALIZATION = {"t0": Fraction(1)}


def certify(profile: Profile, normalize: dict | None = None):
    """Run the walk and decide it; returns ``(report, system, result, normalization)``.

    The gluing conditions are homogeneous in the sizes and gaps, so a
    positive parameter can be scaled to 1 without changing feasibility.
    Normalization is skipped when the profile pins values itself.
    """
    report = run_profile(profile)
    system = report.constraints
    applied = {}
    if normalize and not profile.fixed:
        extra = []
        for name, value in normalize.items():
            if name in system.variables:
                extra.append(Constraint(Affine.var(name) - value, EQ, f"normalization: {name} = {value}"))
                applied[name] = value
        system = system.extended(extra)
    return report, system, eliminate(system), applied


def _parse_normalize(text: str) -> dict:
    out = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {item!r}")
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"not a rational number: {value!r}") from None
    return out


def _verify_profile(profile: Profile, args, golden=None) -> tuple:
    report, system, result, applied = certify(profile, None if args.no_normalize else args.normalize)
    doc = report_document(report, system, result, applied, args.explain)
    if golden is not None:
        problems = compare(report, golden, result)
        doc["golden"] = {"match": not problems, "problems": problems}
    return doc["exit_code"], doc


def _error_doc(message: str, path: str | None = None) -> dict:
    doc = {"schema": REPORT_SCHEMA, "status": "error", "exit_code": EXIT_MALFORMED, "message": message}
    if path is not None:
        doc["path"] = path
    return doc


def _verify_path(path: str, args) -> tuple:
    try:
        code, doc = _verify_profile(load_document(path), args)
    except (ProfileError, OSError) as exc:
        return EXIT_MALFORMED, _error_doc(str(exc), path)
    doc["path"] = path
    return code, doc


def _emit(doc: dict, args, out) -> None:
    if args.format == "structured":
        out.write(json.dumps(doc, indent=2) + "\n")
    elif doc["status"] == "error":
        where = f"{doc['path']}: " if doc.get("path") else ""
        sys.stderr.write(f"error: {where}{doc['message']}\n")
    else:
        if doc.get("path"):
            out.write(f"== {doc['path']}\n")
        out.write(render_text(doc, args.explain))


def _combine(codes) -> int:
    codes = set(codes)
    if EXIT_MALFORMED in codes:
        return EXIT_MALFORMED
    if EXIT_INFEASIBLE in codes:
        return EXIT_INFEASIBLE
    return EXIT_FEASIBLE


def cmd_verify(args, out=sys.stdout) -> int:
    target = Path(args.path)
    if not target.is_dir():
        code, doc = _verify_path(str(target), args)
        _emit(doc, args, out)
        return code
    paths = [str(p) for p in sorted(target.glob("*.json"))]
    if not paths:
        _emit(_error_doc(f"no *.json profiles in {target}"), args, out)
        return EXIT_MALFORMED
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_path, paths, [args] * len(paths)))
    else:
        results = [_verify_path(p, args) for p in paths]
    if args.format == "structured":
        out.write(json.dumps({"schema": REPORT_SCHEMA, "results": [d for _, d in results]}, indent=2) + "\n")
    else:
        for _, doc in results:
            _emit(doc, args, out)
    return _combine(code for code, _ in results)


def cmd_catalog(args, out=sys.stdout) -> int:
    if args.list:
        for tpl in TEMPLATES.values():
            params = ", ".join(p.name for p in tpl.params) or "-"
            out.write(f"{tpl.type_id:>3}  {tpl.summary}  [params: {params}; variants: {', '.join(tpl.variants)}, flipped]\n")
        return EXIT_FEASIBLE
    if args.type is None:
        _emit(_error_doc("catalog needs --type (or --list)"), args, out)
        return EXIT_MALFORMED
    params = {name: getattr(args, name) for name in ("k", "g", "g1", "odd") if getattr(args, name) is not None}
    try:
        profile = instantiate(args.type, params, args.variant)
        golden = expected_outcome(args.type, params, args.variant)
    except CatalogError as exc:
        _emit(_error_doc(str(exc)), args, out)
        return EXIT_MALFORMED
    if args.emit:
        text = dump_document(profile)
        if args.emit == "-":
            out.write(text)
            return EXIT_FEASIBLE
        Path(args.emit).write_text(text)
    try:
        code, doc = _verify_profile(profile, args, golden)
    except ProfileError as exc:
        _emit(_error_doc(str(exc)), args, out)
        return EXIT_MALFORMED
    _emit(doc, args, out)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--normalize", type=_parse_normalize, default=DEFAULT_NORMALIZATION,
                        metavar="NAME=VALUE", help="pin a positive parameter (default t0=1)")
    common.add_argument("--no-normalize", action="store_true", help="leave the parameters unscaled")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--explain", action="store_true", help="explain the origin of every constraint")

    parser = argparse.ArgumentParser(prog="hamcert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="check a profile document or a directory of them")
    verify.add_argument("path")
    verify.add_argument("--jobs", type=int, default=1, help="parallel workers for a directory")
    verify.set_defaults(func=cmd_verify)

    catalog = sub.add_parser("catalog", parents=[common], help="run a catalog template")
    catalog.add_argument("--type", help="type id: " + ", ".join(TEMPLATES))
    catalog.add_argument("--k", type=int)
    catalog.add_argument("--g", type=int)
    catalog.add_argument("--g1", type=int)
    catalog.add_argument("--odd", type=int, choices=(0, 1))
    catalog.add_argument("--variant", default="default")
    catalog.add_argument("--emit", metavar="PATH", help="write the profile document ('-' for stdout only)")
    catalog.add_argument("--list", action="store_true", help="list the templates")
    catalog.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
