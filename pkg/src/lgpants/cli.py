"""Command-line entry point ``lgpants``.

Every command prints one JSON document to stdout::

    {"command": ..., "input": ..., "result": ...}

with a fixed key order, so identical inputs and seed give byte-identical
output. Exit codes: 0 success, 1 a check or validation failed, 2 usage or
parse error.

``--format csv|svg`` is only meaningful for ``trefoil``, together with
``--out``; for every command ``--format json --out PATH`` also writes the
JSON document to PATH.
"""

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path
from typing import Any, List, Optional

from .geometry.config import ConfigError, GeomConfig
from .geometry.export import polyline_csv, polyline_svg
from .geometry.link import NoRoot, RootFindFailure, trefoil_polyline
from .geometry.regions import (
    DegenerateCrossing,
    ResolutionTooLow,
    link_regions_3d,
    polyline_crossings,
    region_count_2d,
)
from .geometry.suite import run_suite
from .modelcat import (
    AutPair,
    BadAutPair,
    InvalidRep,
    SchemaError,
    StarSumRep,
    autpair_to_json,
    classify,
    ext1_autpair,
    from_autpair,
    hom_autpair,
    hom_star,
    load_object,
    random_pants,
    rep_to_json,
    roundtrip_witness,
    to_autpair,
    validate,
)
from .modelcat.generate import MAX_DIM

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "PANTS_SEED"

TREFOIL_EXPECTED = {"crossings": 3, "regions_total": 5, "regions_bounded": 4}
LINK_EXPECTED = {"regions_total": 6, "regions_bounded": 5, "unbounded": 1}


class UsageError(Exception):
    pass


class Failure(Exception):
    """A check failed in a way that leaves no result to print."""


# ---------------------------------------------------------------------------
# argument parsing


def _geometry_flags() -> argparse.ArgumentParser:
    defaults = GeomConfig()
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("geometry configuration")
    g.add_argument("--rho1", type=float, default=defaults.rho1, help="link sphere radius")
    g.add_argument("--tol", type=float, default=defaults.tol, help="defect tolerance")
    g.add_argument("--samples", type=int, default=defaults.samples, help="Monte-Carlo sample count")
    g.add_argument("--grid-res", type=int, default=defaults.grid_res, help="raster/voxel resolution")
    g.add_argument("--ray-samples", type=int, default=defaults.ray_samples, help="directions on the trefoil link")
    return p


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=None, help=f"RNG seed (fallback: ${SEED_ENV}, then 0)")
    p.add_argument("--format", choices=("json", "csv", "svg"), default="json", help="format of the --out file")
    p.add_argument("--out", type=Path, default=None, help="also write output to this file")
    return p


def build_parser() -> argparse.ArgumentParser:
    common, geom = _common_flags(), _geometry_flags()
    parser = argparse.ArgumentParser(prog="lgpants", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    vg = sub.add_parser("verify-geometry", parents=[common, geom], help="run the geometry verification suite")
    vg.add_argument("--literal-wall", action="store_true",
                    help="require double points of q|_K on {theta_a = 0 mod 2pi} instead of mod pi")
    sub.add_parser("trefoil", parents=[common, geom], help="trefoil diagram: crossings and regions")
    sub.add_parser("link-regions", parents=[common, geom], help="complementary regions of the 3D link surface")

    rep = sub.add_parser("rep", help="operations on star-sum representations and automorphism pairs")
    actions = rep.add_subparsers(dest="action", required=True)
    for name, nfiles, text in (
        ("validate", 1, "check the direct-sum constraints"),
        ("classify", 1, "classify a representation"),
        ("hom", 2, "Hom dimensions on both sides of the equivalence"),
        ("roundtrip", 1, "round trip through the automorphism-pair model"),
    ):
        a = actions.add_parser(name, parents=[common], help=text)
        a.add_argument("files", nargs=nfiles, type=Path, metavar="FILE")
    rnd = actions.add_parser("random", parents=[common], help="seeded random 4-star")
    rnd.add_argument("--max-dim", type=int, default=MAX_DIM)
    return parser


def resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"${SEED_ENV} is not an integer: {env!r}") from None


def geometry_config(args) -> GeomConfig:
    try:
        return GeomConfig(rho1=args.rho1, tol=args.tol, samples=args.samples, ray_samples=args.ray_samples,
                          grid_res=args.grid_res, seed=resolve_seed(args.seed))
    except ConfigError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# output


def to_json(obj: Any) -> str:
    return json.dumps(_plain(obj), indent=2, allow_nan=False) + "\n"


def _plain(obj: Any) -> Any:
    """Convert numpy scalars and arrays to plain Python for json."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "tolist"):
        return _plain(obj.tolist())
    return obj


def envelope(command: str, inputs: Any, result: Any) -> dict:
    return {"command": command, "input": inputs, "result": result}


def _config_echo(config: GeomConfig) -> dict:
    return dataclasses.asdict(config)


# ---------------------------------------------------------------------------
# geometry commands


def cmd_verify_geometry(args) -> (dict, int):
    config = geometry_config(args)
    report = run_suite(config, literal_wall=args.literal_wall)
    doc = envelope("verify-geometry", {"config": _config_echo(config), "literal_wall": args.literal_wall},
                   report.as_dict())
    return doc, EXIT_OK if report.passed else EXIT_FAIL


def trefoil_summary(config: GeomConfig):
    """Counts at the configured resolution and the stability verdict under doubling."""
    poly = trefoil_polyline(config)
    crossings, _ = polyline_crossings(poly)
    stable = True
    try:
        regions = region_count_2d(poly, config, check_stability=True)
    except ResolutionTooLow:
        regions = region_count_2d(poly, config)
        stable = False
    fine = trefoil_polyline(config.with_(ray_samples=2 * config.ray_samples))
    try:
        fine_regions = region_count_2d(fine, config)
        stable &= polyline_crossings(fine)[0] == crossings and fine_regions.same_as(regions)
    except (ResolutionTooLow, DegenerateCrossing):
        stable = False
    summary = {"crossings": crossings, "regions_total": regions.total,
               "regions_bounded": regions.bounded, "stable": bool(stable)}
    return poly, summary


def cmd_trefoil(args) -> (dict, int):
    config = geometry_config(args)
    try:
        poly, summary = trefoil_summary(config)
    except (RootFindFailure, DegenerateCrossing, ResolutionTooLow) as exc:
        raise Failure(str(exc)) from None
    if args.format in ("csv", "svg"):
        if args.out is None:
            raise UsageError(f"--format {args.format} needs --out")
        text = polyline_csv(poly) if args.format == "csv" else polyline_svg(poly)
        args.out.write_text(text, encoding="utf-8")
        args.out = None  # the curve file replaces the JSON copy
    ok = summary["stable"] and all(summary[k] == v for k, v in TREFOIL_EXPECTED.items())
    doc = envelope("trefoil", {"config": _config_echo(config)}, summary)
    return doc, EXIT_OK if ok else EXIT_FAIL


def cmd_link_regions(args) -> (dict, int):
    config = geometry_config(args)
    stable = True
    try:
        count = link_regions_3d(config, check_stability=True)
    except ResolutionTooLow:
        count = link_regions_3d(config)
        stable = False
    except NoRoot as exc:
        raise Failure(str(exc)) from None
    summary = {"regions_total": count.total, "regions_bounded": count.bounded,
               "unbounded": count.unbounded, "stable": stable}
    ok = stable and all(summary[k] == v for k, v in LINK_EXPECTED.items())
    doc = envelope("link-regions", {"config": _config_echo(config)}, summary)
    return doc, EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# rep commands


def read_object(path: Path):
    """Parse a rep or AutPair file; every problem here is a usage error."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None
    try:
        obj = load_object(data)
    except SchemaError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return obj


def _echo(obj) -> dict:
    return autpair_to_json(obj) if isinstance(obj, AutPair) else rep_to_json(obj)


def _fmt(x) -> Optional[str]:
    return None if x is None else str(x)


def rep_validate(obj) -> (dict, bool):
    if isinstance(obj, AutPair):
        try:
            obj.check()
            return {"valid": True, "kind": "autpair", "reason": ""}, True
        except BadAutPair as exc:
            return {"valid": False, "kind": "autpair", "reason": str(exc)}, False
    report = validate(obj)
    pairs = [{"a": a, "b": b, "det": _fmt(d)} for a, b, d in report.pairs]
    return {"valid": report.valid, "kind": "star", "pairs": pairs, "reason": report.reason}, report.valid


def rep_classify(obj) -> (dict, bool):
    if isinstance(obj, AutPair):
        try:
            obj.check()
        except BadAutPair as exc:
            return {"class": None, "reason": str(exc)}, False
        return {"class": "autpair", "dim": obj.dim, "m": obj.m.to_strings()}, True
    try:
        res = classify(obj)
    except InvalidRep as exc:
        return {"class": None, "reason": str(exc)}, False
    if res.kind == "autpair":
        return {"class": "autpair", "dim": res.autpair.dim, "m": res.autpair.m.to_strings()}, True
    if res.kind == "vect" and res.witness is not None:
        return {"class": "vect", "dim": res.dims[0], "m3": res.witness.to_strings(),
                "witness_ok": res.witness_ok}, bool(res.witness_ok)
    if res.kind == "vect":
        return {"class": "vect", "dim": res.dims[0]}, True
    return {"class": res.kind, "dims": list(res.dims)}, True


def _both_sides(obj):
    """(star rep or None, AutPair or None) for an input object."""
    if isinstance(obj, AutPair):
        obj.check()
        return from_autpair(obj), obj
    report = validate(obj)
    if not report.valid:
        raise InvalidRep(report.reason)
    return obj, (to_autpair(obj) if obj.n == 4 else None)


def rep_hom(src, dst) -> (dict, bool):
    try:
        s_star, s_pair = _both_sides(src)
        d_star, d_pair = _both_sides(dst)
    except (InvalidRep, BadAutPair) as exc:
        return {"dim_star": None, "dim_autpair": None, "agree": False, "reason": str(exc)}, False
    if s_star.n != d_star.n:
        raise UsageError(f"cannot compare stars with {s_star.n} and {d_star.n} outer spaces")
    dim_star = hom_star(s_star, d_star).dimension
    if s_pair is None or d_pair is None:
        return {"dim_star": dim_star, "dim_autpair": None, "agree": None}, True
    dim_pair = hom_autpair(s_pair, d_pair).dimension
    agree = dim_star == dim_pair
    return {"dim_star": dim_star, "dim_autpair": dim_pair, "agree": agree,
            "ext1_autpair": ext1_autpair(s_pair, d_pair)}, agree


def rep_roundtrip(obj) -> (dict, bool):
    try:
        if isinstance(obj, AutPair):
            back = to_autpair(from_autpair(obj))
            ok = back == obj
            return {"rep": rep_to_json(from_autpair(obj)), "autpair": autpair_to_json(back), "ok": ok}, ok
        pair = to_autpair(obj)
        iso = roundtrip_witness(obj)
    except (InvalidRep, BadAutPair) as exc:
        return {"ok": False, "reason": str(exc)}, False
    return {"autpair": autpair_to_json(pair), "phi": iso.phi.to_strings(), "checks": iso.checks,
            "ok": iso.ok}, iso.ok


def cmd_rep(args) -> (dict, int):
    if args.format != "json":
        raise UsageError("rep commands only write JSON")
    if args.action == "random":
        if not 1 <= args.max_dim <= MAX_DIM:
            raise UsageError(f"--max-dim must lie in 1..{MAX_DIM}")
        seed = resolve_seed(args.seed)
        rep = random_pants(seed, args.max_dim)
        ok = validate(rep).valid
        doc = envelope("rep random", {"seed": seed, "max_dim": args.max_dim}, {"rep": rep_to_json(rep), "valid": ok})
        if args.out is not None:
            args.out.write_text(to_json(rep_to_json(rep)), encoding="utf-8")
            args.out = None  # the rep file itself, loadable by the other actions
        return doc, EXIT_OK if ok else EXIT_FAIL
    objs = [read_object(p) for p in args.files]
    inputs = [{"path": str(p), "data": _echo(o)} for p, o in zip(args.files, objs)]
    handler = {"validate": rep_validate, "classify": rep_classify, "hom": rep_hom, "roundtrip": rep_roundtrip}
    result, ok = handler[args.action](*objs)
    return envelope(f"rep {args.action}", inputs, result), EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"verify-geometry": cmd_verify_geometry, "trefoil": cmd_trefoil,
            "link-regions": cmd_link_regions, "rep": cmd_rep}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for bad usage
        return int(exc.code or 0)
    if args.format != "json" and args.command != "trefoil" and args.command != "rep":
        print(f"lgpants: --format {args.format} is only available for trefoil", file=sys.stderr)
        return EXIT_USAGE
    try:
        doc, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"lgpants: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Failure as exc:
        print(f"lgpants: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = to_json(doc)
    sys.stdout.write(text)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
