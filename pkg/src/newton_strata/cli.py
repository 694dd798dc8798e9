"""Command-line surface: zeta, np, poset, search, verify.

Machine output goes to stdout, diagnostics to stderr; the exit code is 0
exactly when every requested computation or verification succeeded.  All
numeric output is exact: big integers as decimal strings, rationals as
"a/b".  Identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import poset as poset_mod
from . import search as search_mod
from .curves import count_profile, curve_to_text, parse_curve
from .errors import NewtonStrataError
from .gf import DEFAULT_FIELD_CAP
from .polygon import (
    NewtonPolygon,
    break_points_tsv,
    np_from_l,
    parse_polygon,
    polygon_to_json_dict,
    polygon_to_text,
)
from .zeta import l_from_counts, l_from_json_dict, l_to_json_dict, zeta_series


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(line: str) -> None:
    sys.stdout.write(line + "\n")


def _diag(message: str) -> None:
    sys.stderr.write(message + "\n")


def _read_source(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return fh.read().strip()
    return text


# ---------------------------------------------------------------------------
# zeta
# ---------------------------------------------------------------------------

def cmd_zeta(args: argparse.Namespace) -> int:
    model = parse_curve(_read_source(args.curve))
    g = model.genus
    m = args.ext if args.ext is not None else g
    if m < 1:
        raise ValueError("--ext must be >= 1")
    profile = count_profile(model, max(m, g), args.field_cap)
    lpoly = l_from_counts(profile, g)
    series = zeta_series(lpoly, g)
    shown = profile.counts[:m]

    if args.output == "json":
        _emit(_dumps({
            "curve": curve_to_text(model),
            "genus": g,
            "q": model.p,
            "counts": [str(n) for n in shown],
            "L": l_to_json_dict(lpoly),
            "zeta_truncation": [str(c) for c in series],
        }))
    else:
        _emit(f"curve: {curve_to_text(model)}")
        _emit(f"genus: {g}")
        _emit(f"q: {model.p}")
        _emit("counts: " + " ".join(str(n) for n in shown))
        _emit("L coefficients: " + " ".join(str(c) for c in lpoly.coeffs))
        _emit(f"zeta truncation (order {g}): " + " ".join(str(c) for c in series))
    return 0


# ---------------------------------------------------------------------------
# np
# ---------------------------------------------------------------------------

def _polygon_from_args(args: argparse.Namespace) -> NewtonPolygon:
    if args.polygon is not None:
        return parse_polygon(args.polygon)
    source = _read_source(args.source)
    if source.lstrip().startswith("{"):
        return np_from_l(l_from_json_dict(json.loads(source)))
    model = parse_curve(source)
    rec = search_mod.analyze_curve(model, args.field_cap)
    return rec.polygon


def cmd_np(args: argparse.Namespace) -> int:
    if args.polygon is None and args.source is None:
        raise ValueError("need a curve/L-polynomial source or --polygon")
    np = _polygon_from_args(args)
    g = np.genus
    if args.genus is not None:
        if np.height != 2 * args.genus:
            raise ValueError(f"polygon height {np.height} != 2 * genus {args.genus}")
        g = args.genus
    report = poset_mod.stratum_report(g, np)

    if args.output == "tsv":
        sys.stdout.write(break_points_tsv(np))
        return 0
    if args.output == "json":
        _emit(_dumps({
            "polygon": polygon_to_json_dict(np),
            "text": polygon_to_text(np),
            "break_points": [list(pt) for pt in np.break_points()],
            "p_rank": np.p_rank,
            "supersingular": np.is_supersingular,
            "ordinary": np.is_ordinary,
            "report": poset_mod.report_to_json_dict(report),
        }))
        return 0
    _emit(f"polygon: {polygon_to_text(np)}")
    _emit(f"height: {np.height} (genus {g})")
    _emit("break points: " + " ".join(f"({x},{y})" for x, y in np.break_points()))
    _emit(f"p-rank: {np.p_rank}")
    _emit(f"supersingular: {str(np.is_supersingular).lower()}")
    _emit(f"ordinary: {str(np.is_ordinary).lower()}")
    _emit(f"codim: {report.codim if report.codim is not None else 'n/a'}")
    _emit(f"dim A_g: {report.dim_ag}")
    _emit(f"dim supersingular locus: {report.dim_ss}")
    oort = report.oort_flag_codim
    _emit(f"codim >= 3g-3: {'n/a' if oort is None else str(oort).lower()}")
    _emit("denominators: " + " ".join(str(b) for b in report.denominators))
    dec = report.decomposable
    _emit(f"decomposable: {'n/a' if dec is None else str(dec).lower()}")
    for note in report.notes:
        _emit(f"note: {note}")
    return 0


# ---------------------------------------------------------------------------
# poset
# ---------------------------------------------------------------------------

def cmd_poset(args: argparse.Namespace) -> int:
    poset = poset_mod.build_poset(args.genus)
    if args.format == "dot":
        sys.stdout.write(poset_mod.to_dot(poset))
    else:
        _emit(_dumps(poset_mod.poset_to_json_dict(poset)))
    return 0


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def _filter_from_args(args: argparse.Namespace):
    chosen = [
        args.prank is not None,
        args.polygon is not None,
        args.supersingular,
        args.all,
    ]
    if sum(chosen) > 1:
        raise ValueError("choose at most one of --prank/--polygon/--supersingular/--all")
    if args.prank is not None:
        return search_mod.PRankEquals(args.prank)
    if args.polygon is not None:
        return search_mod.PolygonEquals(parse_polygon(args.polygon))
    if args.supersingular:
        return search_mod.Supersingular()
    return search_mod.All()


def cmd_search(args: argparse.Namespace) -> int:
    family = search_mod.parse_family(args.family)
    spec = search_mod.SearchSpec(
        family=family,
        filter=_filter_from_args(args),
        limit=args.limit,
        chunking=args.chunk,
    )
    result = search_mod.run_survey(
        spec,
        workers=args.workers,
        field_cap=args.field_cap,
        budget=args.budget,
        checkpoint_path=args.resume,
        on_match=lambda rec: _emit(_dumps(search_mod.match_to_json_dict(rec))),
    )
    summary = {
        "family": result.family,
        "filter": result.filter,
        "total_scanned": result.total_scanned,
        "skipped_singular": result.skipped_singular,
        "matches": len(result.matches),
        "complete": result.complete,
    }
    if result.histogram is not None:
        summary["histogram"] = dict(sorted(result.histogram.items()))
    _emit(_dumps({"summary": summary}))
    return 0 if result.complete else 1


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    report = search_mod.verify_named(args.name, args.field_cap)
    if args.output == "json":
        _emit(_dumps(search_mod.verify_report_to_json_dict(report)))
    else:
        _emit(f"{report.name}: {'PASS' if report.ok else 'FAIL'}")
        for claim in report.claims:
            status = "ok" if claim.ok else "MISMATCH"
            _emit(f"  {claim.label}: expected {claim.expected}, computed {claim.computed} [{status}]")
        _emit(f"  curve: {report.curve}")
        _emit(f"  polygon: {polygon_to_text(report.polygon)}")
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newton-strata",
        description="Zeta functions, Newton polygons and p-rank strata of "
        "curves over small finite fields (exact arithmetic).",
    )
    parser.add_argument("--output", choices=["pretty", "json", "tsv"], default="pretty",
                        help="output format for zeta/np/verify")
    parser.add_argument("--workers", type=int, default=1, help="worker processes for search")
    parser.add_argument("--field-cap", type=int, default=DEFAULT_FIELD_CAP,
                        help="reject fields with p^k beyond this cap")
    sub = parser.add_subparsers(dest="command", required=True)

    p_zeta = sub.add_parser("zeta", help="point counts, L-polynomial and zeta truncation")
    p_zeta.add_argument("curve", help="curve text `hyp p:3 f:[...]` / `as p:2 h:[...]` or @file")
    p_zeta.add_argument("--ext", type=int, default=None,
                        help="count points over F_{p^k} for k <= ext (default: genus)")
    p_zeta.set_defaults(func=cmd_zeta)

    p_np = sub.add_parser("np", help="Newton polygon, break points, p-rank, stratum report")
    p_np.add_argument("source", nargs="?", default=None,
                      help="curve text, L-polynomial JSON, or @file")
    p_np.add_argument("--polygon", default=None, help="slope multiset literal like `8*(1/2)`")
    p_np.add_argument("--genus", type=int, default=None,
                      help="assert the genus (must equal height/2)")
    p_np.set_defaults(func=cmd_np)

    p_poset = sub.add_parser("poset", help="dominance poset of admissible symmetric polygons")
    p_poset.add_argument("--genus", type=int, required=True)
    p_poset.add_argument("--format", choices=["dot", "json"], default="dot")
    p_poset.set_defaults(func=cmd_poset)

    p_search = sub.add_parser("search", help="exhaustive curve survey (JSON-lines matches)")
    p_search.add_argument("--family", required=True, help="hyp:p:d or as:p:d[:e1,e2,...]")
    p_search.add_argument("--prank", type=int, default=None, help="keep curves of this p-rank")
    p_search.add_argument("--polygon", default=None, help="keep curves with this polygon")
    p_search.add_argument("--supersingular", action="store_true")
    p_search.add_argument("--all", action="store_true", help="keep every curve (default)")
    p_search.add_argument("--limit", type=int, default=None, help="stop after this many matches")
    p_search.add_argument("--chunk", type=int, default=search_mod.DEFAULT_CHUNK)
    p_search.add_argument("--resume", default=None, help="checkpoint file (last chunk index)")
    p_search.add_argument("--budget", type=int, default=search_mod.DEFAULT_BUDGET)
    p_search.set_defaults(func=cmd_search)

    p_verify = sub.add_parser("verify", help="recompute and check a named curve")
    p_verify.add_argument("name", help="catalog name, e.g. ap-g4-p3")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NewtonStrataError, ValueError, OSError, json.JSONDecodeError) as exc:
        _diag(f"error: {type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
