"""Witness-backed atlases of skeletal signatures, one genus at a time.

An atlas is a lower set: a point appears only with at least one verified
witness.  A point is recorded as *absent* only when every group order that
Riemann-Hurwitz allows for it is complete in the catalog and every search
finished without a witness.  Everything else in the triangle is unknown.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .catalog import Catalog, default_catalog, load_catalog
from .criteria import ActionWitness, all_constructions, construct_witness, harvey_c4, search_witness
from .genvec import DEFAULT_BUDGET, BudgetExceeded
from .groups import FiniteGroup
from .regions import (
    contains,
    gap_allowed,
    k_sigma,
    region_l,
    region_t,
    s_count_formula,
    s_lattice_points,
    t_lattice_points,
)
from .signatures import Signature, SkeletalPoint, check_genus, enumerate_signatures
from .transforms import C4Signature
from . import families

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
CACHE_ENV = "SKELSIG_CACHE_DIR"


class CacheError(ValueError):
    pass


def hurwitz_bound(sigma: int) -> int:
    return 84 * (sigma - 1)


# -- C4 sweep ------------------------------------------------------------------------


def c4_signatures(sigma: int) -> list[C4Signature]:
    """All C4 signatures of genus ``sigma`` that pass Harvey's test, in scan order."""
    check_genus(sigma)
    out = []
    for h in range(sigma + 1):
        for t2 in range(sigma + 3):
            for t1 in range(2 * sigma + 3):
                # RH for |G| = 4, times 4 to stay integral
                if 16 * h - 12 + 4 * t1 + 6 * t2 != 4 * sigma:
                    continue
                sig = C4Signature(h, t1, t2)
                if harvey_c4(sig):
                    out.append(sig)
    return out


def c4_sweep(sigma: int, budget: int = DEFAULT_BUDGET) -> dict[SkeletalPoint, ActionWitness]:
    """One verified C4 witness per skeletal point reachable by C4."""
    G = families.cyclic(4)
    out: dict[SkeletalPoint, ActionWitness] = {}
    for c4 in c4_signatures(sigma):
        p = c4.skeletal
        if p in out:
            continue
        w = search_witness(sigma, G, c4.signature(), "c4-sweep", budget)
        if w is None or not w.verify():
            raise AssertionError(f"Harvey's test accepts {c4} but no C4 generating vector was found")
        out[p] = w
    return out


# -- lower bound -------------------------------------------------------------------------


def lower_bound_actions(sigma: int) -> tuple[Fraction, int]:
    if check_genus(sigma) < 6:
        raise ValueError(f"lower bound is stated for genus >= 6, got {sigma}")
    k = k_sigma(sigma)
    bound = Fraction((k + 1) * (k + 3), 4)
    s_count = len(s_lattice_points(sigma))
    if s_count != s_count_formula(sigma) or bound > s_count:
        raise AssertionError(f"genus {sigma}: bound {bound}, |S| = {s_count}")
    return bound, s_count


# -- the atlas type ------------------------------------------------------------------


@dataclass(frozen=True)
class AtlasScope:
    max_order: int
    budget: int
    incomplete_orders: tuple[int, ...]

    def to_json(self) -> dict:
        return {"max_order": self.max_order, "budget": self.budget, "incomplete_orders": list(self.incomplete_orders)}

    @classmethod
    def from_json(cls, data: dict) -> "AtlasScope":
        return cls(data["max_order"], data["budget"], tuple(data["incomplete_orders"]))


@dataclass(frozen=True)
class KAtlas:
    genus: int
    points: tuple[tuple[SkeletalPoint, tuple[ActionWitness, ...]], ...]
    absent: tuple[SkeletalPoint, ...]
    unknown: tuple[tuple[SkeletalPoint, str], ...]
    scope: AtlasScope
    complete: bool
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", dict(self.points))

    def __contains__(self, p) -> bool:
        return SkeletalPoint(*p) in self._index

    def witnesses(self, p) -> tuple[ActionWitness, ...]:
        return self._index.get(SkeletalPoint(*p), ())

    @property
    def point_set(self) -> frozenset[SkeletalPoint]:
        return frozenset(self._index)

    def is_absent(self, p) -> bool:
        return SkeletalPoint(*p) in set(self.absent)

    def unknown_reason(self, p) -> str | None:
        return dict(self.unknown).get(SkeletalPoint(*p))

    def check_invariants(self, catalog: Catalog | None = None, reverify: bool = False) -> list[str]:
        """Region and witness checks every atlas must pass; returns problems found."""
        problems = []
        T = region_t(self.genus)
        for p, ws in self.points:
            if not ws:
                problems.append(f"{p}: stored without a witness")
            if not contains(T, p):
                problems.append(f"{p}: outside T({self.genus})")
            if not gap_allowed(self.genus, p):
                problems.append(f"{p}: inside the excluded band")
            for w in ws:
                if w.skeletal != p or w.genus != self.genus:
                    problems.append(f"{p}: witness {w.group_name} {w.signature} belongs elsewhere")
                if w.order >= 2 and not contains(region_l(self.genus, w.order), p):
                    problems.append(f"{p}: outside L({self.genus},{w.order}) for {w.group_name}")
                if reverify and not w.verify(catalog):
                    problems.append(f"{p}: witness {w.group_name} {w.signature} fails verification")
        return problems

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "genus": self.genus,
            "scope": self.scope.to_json(),
            "complete": self.complete,
            "points": [
                {"h": p.h, "r": p.r, "witnesses": [w.to_json() for w in ws]} for p, ws in self.points
            ],
            "absent": [[p.h, p.r] for p in self.absent],
            "unknown": [{"h": p.h, "r": p.r, "reason": why} for p, why in self.unknown],
        }

    @classmethod
    def from_json(cls, data: dict) -> "KAtlas":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise CacheError(f"unsupported atlas schema version {version!r}")
        points = tuple(
            (SkeletalPoint(d["h"], d["r"]), tuple(ActionWitness.from_json(w) for w in d["witnesses"]))
            for d in data["points"]
        )
        return cls(
            data["genus"],
            points,
            tuple(SkeletalPoint(h, r) for h, r in data["absent"]),
            tuple((SkeletalPoint(d["h"], d["r"]), d["reason"]) for d in data["unknown"]),
            AtlasScope.from_json(data["scope"]),
            data["complete"],
        )


# -- building --------------------------------------------------------------------------


def point_candidates(sigma: int, max_order: int) -> dict[SkeletalPoint, list[tuple[int, Signature]]]:
    """RH-compatible ``(|G|, signature)`` pairs per point, in search order."""
    out: dict[SkeletalPoint, list[tuple[int, Signature]]] = {}
    for N in range(2, max_order + 1):
        for sig in enumerate_signatures(N, sigma, divisors_only=True):
            out.setdefault(SkeletalPoint(sig.h, sig.r), []).append((N, sig))
    return out


def _search_point(sigma: int, point, candidates, catalog: Catalog, budget: int, truncated: int | None = None):
    """First catalog witness for ``point``, else whether absence is proved.

    ``truncated`` is the order cap when it sits below the Hurwitz bound, in
    which case larger orders were never tried and absence cannot be claimed.
    Returns ``(point, witness, status, reason)`` with status one of
    ``witnessed``, ``absent``, ``unknown``.
    """
    incomplete = set()
    exhausted = []
    for N, sig in candidates:
        listing = catalog.groups_of_order(N)
        if not listing.complete:
            incomplete.add(N)
        for G in listing.groups:
            try:
                w = search_witness(sigma, G, sig, "catalog-search", budget)
            except BudgetExceeded as exc:
                exhausted.append(f"{G.name} {sig}: {exc}")
                continue
            if w is not None:
                return point, w, "witnessed", ""
    if exhausted:
        return point, None, "unknown", "budget exceeded: " + "; ".join(exhausted)
    if incomplete:
        return point, None, "unknown", "orders not complete in catalog: " + ",".join(map(str, sorted(incomplete)))
    if truncated is not None:
        return point, None, "unknown", f"orders above {truncated} not searched"
    return point, None, "absent", ""


_WORKER_CATALOG: Catalog | None = None


def _worker_init(catalog_path):
    global _WORKER_CATALOG
    _WORKER_CATALOG = load_catalog(catalog_path) if catalog_path else default_catalog()


def _worker(args):
    sigma, point, candidates, budget, truncated = args
    point, w, status, reason = _search_point(sigma, point, candidates, _WORKER_CATALOG, budget, truncated)
    if w is not None:
        # the group object travels back as name and checksum only
        w = ActionWitness.from_json(w.to_json())
    return point, w, status, reason


def build_atlas(
    sigma: int,
    catalog: Catalog | None = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    max_order: int | None = None,
    catalog_path: str | Path | None = None,
) -> KAtlas:
    """Constructions, the C4 sweep, then a per-point catalog search.

    The catalog search visits each unwitnessed point of ``T(sigma)`` and
    tries its candidate ``(|G|, signature)`` pairs by ascending order until
    one group admits a generating vector.  Results do not depend on
    ``jobs``.
    """
    sigma = check_genus(sigma)
    if catalog is None:
        catalog = load_catalog(catalog_path) if catalog_path else default_catalog()
    max_order = hurwitz_bound(sigma) if max_order is None else max_order

    found: dict[SkeletalPoint, list[ActionWitness]] = {}
    for kind in all_constructions(sigma):
        w = construct_witness(kind, sigma, budget)
        found.setdefault(w.skeletal, []).append(w)
    if sigma >= 6:
        for p, w in c4_sweep(sigma, budget).items():
            found.setdefault(p, []).append(w)

    candidates = point_candidates(sigma, max_order)
    incomplete_orders = sorted(
        {N for cands in candidates.values() for N, _ in cands if not catalog.is_complete(N)}
    )
    todo = [p for p in t_lattice_points(sigma) if p not in found]
    truncated = max_order if max_order < hurwitz_bound(sigma) else None
    tasks = [(sigma, p, candidates.get(p, []), budget, truncated) for p in todo]

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs, initializer=_worker_init, initargs=(str(catalog_path) if catalog_path else None,)) as ex:
            results = list(ex.map(_worker, tasks))
    else:
        results = [_search_point(*t[:3], catalog, *t[3:]) for t in tasks]

    absent, unknown = [], []
    for p, w, status, reason in results:
        if w is not None:
            found.setdefault(p, []).append(w)
        elif status == "absent":
            absent.append(p)
        else:
            unknown.append((p, reason))

    points = tuple(
        (p, tuple(_dedupe(sorted(found[p], key=ActionWitness.sort_key)))) for p in sorted(found)
    )
    complete = truncated is None and all(catalog.is_complete(n) for n in range(1, max_order + 1))
    atlas = KAtlas(
        sigma,
        points,
        tuple(sorted(absent)),
        tuple(sorted(unknown)),
        AtlasScope(max_order, budget, tuple(incomplete_orders)),
        complete,
    )
    problems = atlas.check_invariants()
    if problems:
        raise AssertionError(f"atlas for genus {sigma} violates invariants: {problems}")
    return atlas


def _dedupe(ws):
    seen = set()
    for w in ws:
        key = (w.group_name, w.checksum, w.signature)
        if key not in seen:
            seen.add(key)
            yield w


# -- cache -----------------------------------------------------------------------------


def cache_dir(path: str | Path | None = None) -> Path | None:
    if path is not None:
        return Path(path)
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def cache_file(sigma: int, directory: Path) -> Path:
    return directory / f"atlas_genus_{sigma}.json"


def save_atlas(atlas: KAtlas, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(atlas.to_json(), indent=1, sort_keys=True) + "\n")


def load_atlas(path: str | Path, catalog: Catalog | None = None) -> KAtlas:
    """Read an atlas back and re-verify every witness."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheError(f"cannot read atlas cache {path}: {exc}") from exc
    atlas = KAtlas.from_json(data)
    problems = atlas.check_invariants(catalog or default_catalog(), reverify=True)
    if problems:
        raise CacheError(f"cached atlas {path} fails verification: {problems}")
    return atlas


def cached_atlas(
    sigma: int,
    catalog: Catalog | None = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    directory: str | Path | None = None,
    catalog_path: str | Path | None = None,
) -> KAtlas:
    """``build_atlas`` behind the JSON cache, when a cache directory is configured."""
    d = cache_dir(directory)
    if d is not None:
        f = cache_file(sigma, d)
        if f.exists():
            try:
                atlas = load_atlas(f, catalog)
            except CacheError as exc:
                log.warning("%s; rebuilding", exc)
            else:
                if atlas.scope.budget == budget and atlas.scope.max_order == hurwitz_bound(sigma):
                    return atlas
    atlas = build_atlas(sigma, catalog, budget, jobs, catalog_path=catalog_path)
    if d is not None:
        save_atlas(atlas, cache_file(sigma, d))
    return atlas


def witness_group(w: ActionWitness, catalog: Catalog | None = None) -> FiniteGroup:
    return w.resolve(catalog or default_catalog())


# -- conjecture scan -------------------------------------------------------------------


class Status:
    WITNESSED = "Witnessed"
    UNKNOWN = "UnknownNoWitness"
    VIOLATION = "Violation"


@dataclass(frozen=True)
class ConjectureEntry:
    genus: int
    point: SkeletalPoint
    claim: str  # "persistent", "missing" or "sporadic"
    status: str
    detail: str = ""


@dataclass(frozen=True)
class ConjectureReport:
    conjecture: str
    statement: str
    genera: tuple[int, ...]
    entries: tuple[ConjectureEntry, ...]

    @property
    def violations(self) -> list[ConjectureEntry]:
        return [e for e in self.entries if e.status == Status.VIOLATION]

    @property
    def unknown(self) -> list[ConjectureEntry]:
        return [e for e in self.entries if e.status == Status.UNKNOWN]

    def first_witnessed(self) -> dict[SkeletalPoint, int]:
        """Smallest scanned genus at which each point carries a witness."""
        out: dict[SkeletalPoint, int] = {}
        for e in self.entries:
            if e.status == Status.WITNESSED and (e.point not in out or e.genus < out[e.point]):
                out[e.point] = e.genus
        return out


def nearest(x: Fraction) -> tuple[int, ...]:
    """Nearest integer; an exact half gives both neighbours."""
    x = Fraction(x)
    lo = x.numerator // x.denominator
    frac = x - lo
    if frac == Fraction(1, 2):
        return (lo, lo + 1)
    return (lo + 1,) if frac > Fraction(1, 2) else (lo,)


# (id, statement, smallest genus the "for all genus >= g0" part applies from, or None)
CONJECTURES = (
    ("h0-line", "(0,r) is persistent for 4 <= r <= genus+2", 2),
    ("h1-line", "(1,r) is persistent for 3 <= r <= genus-1", 2),
    ("triangular-gap", "for genus >= 9 nothing lies strictly between r = genus+3-4h and r = genus+2-3h", None),
    ("h2-line", "for genus >= 7, (2, nearest(2g/3-4)) is missing, (2,2) is missing at genus 17, other (2,r) with 2 <= r <= genus-4 are persistent, (2,1) is sporadic", 7),
    ("h3-line", "for genus >= 18, (3, nearest(2g/3-7)), (3, nearest(2g/3-8)) and, when genus = 2 mod 3, (3, nearest(2g/3-6)) are missing; other (3,r) with 2 <= r <= genus-9 are persistent eventually, (3,1) is sporadic", None),
    ("r1-sporadic", "(h,1) is sporadic for every h >= 2", None),
    ("strong-persistence", "every (h,r) with h >= 2 and r >= 2 is eventually persistent", None),
)


def _claims(cid: str, g: int):
    """(point, claim) pairs a conjecture makes about genus ``g``."""
    T = region_t(g)
    if cid == "h0-line":
        yield from (((0, r), "persistent") for r in range(4, g + 3))
    elif cid == "h1-line":
        yield from (((1, r), "persistent") for r in range(3, g))
    elif cid == "triangular-gap":
        if g >= 9:
            for h in range(g + 4):
                for r in range(max(0, g + 4 - 4 * h), g + 2 - 3 * h):
                    yield (h, r), "missing"
    elif cid == "h2-line":
        gaps = set()
        if g >= 7:
            gaps = set(nearest(Fraction(2 * g, 3) - 4))
            if g == 17:
                gaps.add(2)
            for r in sorted(gaps):
                yield (2, r), "missing"
            for r in range(2, g - 3):
                if r not in gaps:
                    yield (2, r), "persistent"
        # for genus 7 and 8 the missing point above is (2,1) itself
        if 1 not in gaps and contains(T, (2, 1)):
            yield (2, 1), "sporadic"
    elif cid == "h3-line":
        gaps = set()
        if g >= 18:
            gaps |= set(nearest(Fraction(2 * g, 3) - 7)) | set(nearest(Fraction(2 * g, 3) - 8))
            if g % 3 == 2:
                gaps |= set(nearest(Fraction(2 * g, 3) - 6))
            for r in sorted(gaps):
                yield (3, r), "missing"
        for r in range(2, g - 8):
            if r not in gaps:
                yield (3, r), "persistent"
        if contains(T, (3, 1)):
            yield (3, 1), "sporadic"
    elif cid == "r1-sporadic":
        yield from (((h, 1), "sporadic") for h in range(2, g + 1) if contains(T, (h, 1)))
    elif cid == "strong-persistence":
        yield from (((p.h, p.r), "persistent") for p in t_lattice_points(g) if p.h >= 2 and p.r >= 2)
    else:
        raise KeyError(cid)


def scan_conjectures(atlases: list[KAtlas], catalog: Catalog | None = None) -> list[ConjectureReport]:
    """Status of every point each conjecture speaks about, against the atlases.

    Nothing here asserts a conjecture.  A witness at a point claimed missing,
    or a proved absence at a point claimed persistent from an explicit
    genus on, is reported as a violation.
    """
    if not atlases:
        raise ValueError("need at least one atlas")
    atlases = sorted(atlases, key=lambda a: a.genus)
    reports = []
    for cid, statement, from_genus in CONJECTURES:
        entries = []
        for atlas in atlases:
            g = atlas.genus
            for (h, r), claim in _claims(cid, g):
                p = SkeletalPoint(h, r)
                ws = atlas.witnesses(p)
                if ws:
                    if claim == "missing" and any(w.verify(catalog) for w in ws):
                        w = ws[0]
                        entries.append(ConjectureEntry(g, p, claim, Status.VIOLATION, f"{w.group_name} {w.signature}"))
                    else:
                        entries.append(ConjectureEntry(g, p, claim, Status.WITNESSED, f"{ws[0].group_name} {ws[0].signature}"))
                elif atlas.is_absent(p):
                    definite = claim == "persistent" and from_genus is not None and g >= from_genus
                    entries.append(
                        ConjectureEntry(g, p, claim, Status.VIOLATION if definite else Status.UNKNOWN, "absent after exhaustive search")
                    )
                else:
                    entries.append(ConjectureEntry(g, p, claim, Status.UNKNOWN, atlas.unknown_reason(p) or "no witness"))
        reports.append(ConjectureReport(cid, statement, tuple(a.genus for a in atlases), tuple(entries)))
    return reports
