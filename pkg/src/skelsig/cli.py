"""``skelsig``: bounds, atlases and self-checks from the command line.

Exit codes: 0 success, 1 a verification failed, 2 usage or precondition
error, 3 unreadable or invalid catalog.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import verify
from .atlas import KAtlas, cached_atlas, lower_bound_actions
from .catalog import CatalogError, load_catalog
from .genvec import DEFAULT_BUDGET
from .regions import contains, k_sigma, region_t

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CATALOG = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- renderers ---------------------------------------------------------------------


def render_json(atlas: KAtlas) -> str:
    return json.dumps(atlas.to_json(), indent=1, sort_keys=True) + "\n"


def render_csv(atlas: KAtlas) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["h", "r", "witness_count", "min_group_order"])
    for p, ws in atlas.points:
        w.writerow([p.h, p.r, len(ws), min(x.order for x in ws)])
    return buf.getvalue()


LEGEND = (
    "# witnessed",
    "- on the hyperelliptic or C3 line, no witness",
    ". absent after exhaustive search",
    "  (blank) no witness found within the search scope",
)


def render_ascii(atlas: KAtlas) -> str:
    """Grid over T(genus): h to the right, r upwards, origin bottom left."""
    g = atlas.genus
    T = region_t(g)
    h_max = (2 * g + 2) // 4
    r_max = 2 * g + 2
    absent = set(atlas.absent)
    width = len(str(r_max))
    lines = [f"genus {g}"]
    for r in range(r_max, -1, -1):
        cells = []
        for h in range(h_max + 1):
            if not contains(T, (h, r)):
                cells.append(" ")
            elif (h, r) in atlas:
                cells.append("#")
            elif (h, r) in absent:
                cells.append(".")
            elif r == 2 * g + 2 - 4 * h or r == g + 2 - 3 * h:
                cells.append("-")
            else:
                cells.append(" ")
        lines.append(f"{r:>{width}} |" + " ".join(cells).rstrip())
    lines.append(" " * width + " +" + "-" * (2 * h_max + 1))
    lines.append(" " * width + "  " + " ".join(str(h % 10) for h in range(h_max + 1)) + "   h")
    lines.extend(LEGEND)
    return "\n".join(lines) + "\n"


RENDERERS = {"json": render_json, "csv": render_csv, "ascii": render_ascii}


# -- commands ------------------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    g = args.genus
    if g is None:
        raise UsageError("bound needs --genus")
    if g < 6:
        raise UsageError(f"the lower bound on the number of actions is stated for genus >= 6, got {g}")
    bound, s_count = lower_bound_actions(g)
    _emit(f"k={k_sigma(g)} paper_bound={bound} s_count={s_count}\n", args.out)
    return EXIT_OK


def cmd_atlas(args) -> int:
    if args.genus is None or args.genus < 2:
        raise UsageError("atlas needs --genus >= 2")
    try:
        catalog = load_catalog(args.catalog)
    except (OSError, CatalogError) as exc:
        print(f"catalog error: {exc}", file=sys.stderr)
        return EXIT_CATALOG
    atlas = cached_atlas(args.genus, catalog, budget=args.budget, jobs=args.jobs, catalog_path=args.catalog)
    _emit(RENDERERS[args.format](atlas), args.out)
    for p, reason in atlas.unknown:
        if reason.startswith("budget"):
            print(f"note: {p}: {reason}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    t = args.target
    if t == "counts":
        rep = verify.verify_counts(args.max_genus or 200)
    elif t == "regions":
        rep = verify.verify_regions(args.max_genus or 40, seed=args.seed)
    elif t == "transforms":
        rep = verify.verify_transforms()
    elif t == "harvey":
        rep = verify.verify_harvey(args.max_genus or 40, budget=args.budget)
    elif t == "quaternion":
        rep = verify.verify_quaternion()
    else:
        try:
            catalog = load_catalog(args.catalog)
        except (OSError, CatalogError) as exc:
            print(f"catalog error: {exc}", file=sys.stderr)
            return EXIT_CATALOG
        try:
            rep = verify.verify_sporadic(args.prime, catalog, budget=args.budget)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    _emit(json.dumps(rep.to_json(), indent=1) + "\n", args.out)
    return EXIT_OK if rep.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int)
    common.add_argument("--max-genus", type=int)
    common.add_argument("--catalog", help="catalog table (default: the bundled one)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="transition budget per search")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=sorted(RENDERERS), default="json")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--prime", type=int, default=5)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="skelsig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("bound", parents=[common], help="lower bound on the number of actions").set_defaults(func=cmd_bound)
    sub.add_parser("atlas", parents=[common], help="witnessed skeletal signatures for one genus").set_defaults(func=cmd_atlas)
    p = sub.add_parser("verify", parents=[common], help="run a self-check suite")
    p.add_argument("target", choices=verify.TARGETS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.budget < 1 or args.jobs < 1:
        print("error: --budget and --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
