"""Catalog of small groups.

Orders up to 32 come from a text table shipped with the package
(``data/small_groups.txt``), which lists one representative per
isomorphism class.  Larger orders up to 256 are covered only by the
families (cyclic, dihedral, generalized quaternion, abelian with at most
three invariant factors) and are built lazily on request.

Table format::

    format skelsig-catalog 1
    complete 1-32
    # name  order  degree  split  generators
    C4      4      4       -      (1,2,3,4)

``split`` is ``-`` when the coarse fingerprint (abelian flag, order
histogram, center, derived subgroup) already tells the record apart from
the other records of its order, and ``fine`` when the finer element-level
invariants are needed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Callable, NamedTuple

import numpy as np

from . import families
from .extensions import KNOWN_COUNTS
from .groups import FiniteGroup, GroupError, format_cycles, group_from_table, minimal_generators_of_table, parse_cycles
from .isomorphism import find_isomorphism, fine_fingerprint

log = logging.getLogger(__name__)

DEFAULT_CATALOG_PATH = Path(__file__).parent / "data" / "small_groups.txt"
FORMAT_LINE = "format skelsig-catalog 1"
FAMILY_MAX_ORDER = 256


class CatalogError(ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    order: int
    build: Callable[[], FiniteGroup] = field(repr=False)
    split: str = "-"
    generators: tuple[str, ...] = ()


class OrderListing(NamedTuple):
    groups: list[FiniteGroup]
    complete: bool


# -- completeness beyond the table --------------------------------------------


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _totient(n: int) -> int:
    out = n
    for p in _prime_factors(n):
        out = out // p * (p - 1)
    return out


def families_cover(n: int) -> bool:
    """Orders where the families provably list every group.

    ``gcd(n, phi(n)) = 1`` (only the cyclic group), ``p^2`` (two abelian
    groups), ``2p`` for odd primes ``p`` (cyclic and dihedral), and ``4p``
    for primes ``p = 3 mod 4`` above 3: the Sylow ``p``-subgroup is normal
    and ``C4`` or ``C2xC2`` can only act on it through ``+-1``, giving the
    two abelian groups, the dihedral and the dicyclic group.
    """
    f = _prime_factors(n)
    if gcd(n, _totient(n)) == 1:
        return True
    if len(f) == 1 and sum(f.values()) == 2:
        return True
    if len(f) == 2 and f.get(2) == 1 and sum(f.values()) == 2:
        return True
    if len(f) == 2 and f.get(2) == 2 and sum(f.values()) == 3:
        p = max(f)
        return p > 3 and p % 4 == 3
    return False


def abelian_invariant_factors(n: int, max_factors: int | None = None) -> list[tuple[int, ...]]:
    """All ``(n1, n2, ...)`` with ``n_{i+1} | n_i`` and product ``n``."""
    out = []

    def rec(rest, bound, acc):
        if rest == 1:
            out.append(tuple(acc))
            return
        if max_factors is not None and len(acc) >= max_factors:
            return
        for d in range(min(rest, bound), 1, -1):
            if rest % d == 0 and (not acc or acc[-1] % d == 0):
                rec(rest // d, d, acc + [d])

    rec(n, n, [])
    # invariant factor lists: each divides the previous one
    return [t for t in out if all(t[i] % t[i + 1] == 0 for i in range(len(t) - 1))]


def _family_entries(n: int) -> list[CatalogEntry]:
    out = []
    for factors in abelian_invariant_factors(n, max_factors=3):
        name = "x".join(f"C{f}" for f in factors)
        out.append(CatalogEntry(name, n, lambda name=name: families.family_from_name(name)))
    if n % 2 == 0 and n // 2 >= 3:
        out.append(CatalogEntry(f"D{n // 2}", n, lambda m=n // 2: families.dihedral(m)))
    if n % 4 == 0 and n // 4 >= 2:
        out.append(CatalogEntry(f"Q{n}", n, lambda m=n // 4: families.generalized_quaternion(m)))
    return out


# -- the catalog ---------------------------------------------------------------


class Catalog:
    """Groups by order, with honest completeness flags."""

    def __init__(self, entries: list[CatalogEntry], complete_orders, family_max_order: int = FAMILY_MAX_ORDER):
        self._table_entries: dict[int, list[CatalogEntry]] = {}
        for e in entries:
            self._table_entries.setdefault(e.order, []).append(e)
        self.table_orders = frozenset(self._table_entries)
        self.family_max_order = family_max_order
        complete = set(complete_orders)
        for n in range(max(self.table_orders, default=0) + 1, family_max_order + 1):
            if families_cover(n):
                complete.add(n)
        self.complete_orders = frozenset(complete)
        self._by_name = {e.name: e for es in self._table_entries.values() for e in es}
        self._family_cache: dict[int, list[CatalogEntry]] = {}
        self._build = lru_cache(maxsize=512)(self._build_uncached)

    def entries_of_order(self, n: int) -> list[CatalogEntry]:
        if n in self._table_entries:
            return self._table_entries[n]
        if n > self.family_max_order or n < 1:
            return []
        if n not in self._family_cache:
            self._family_cache[n] = _family_entries(n)
            for e in self._family_cache[n]:
                self._by_name.setdefault(e.name, e)
        return self._family_cache[n]

    def _build_uncached(self, name: str) -> FiniteGroup:
        entry = self._by_name.get(name)
        if entry is None:
            g = families.family_from_name(name)
            if g is None:
                raise CatalogError(f"unknown group {name!r}")
            return g
        g = entry.build()
        g.name = entry.name
        return g

    def group(self, name: str) -> FiniteGroup:
        """Resolve a group by catalog or family name."""
        return self._build(name)

    def groups_of_order(self, n: int) -> OrderListing:
        entries = self.entries_of_order(n)
        return OrderListing([self.group(e.name) for e in entries], n in self.complete_orders)

    def names_of_order(self, n: int) -> list[str]:
        return [e.name for e in self.entries_of_order(n)]

    def is_complete(self, n: int) -> bool:
        return n in self.complete_orders

    def __iter__(self):
        for n in sorted(self._table_entries):
            yield from self._table_entries[n]

    # validation -------------------------------------------------------------

    def validate(self, deep: bool = False) -> list[str]:
        """Problems found, empty if none.

        Checks declared orders, record counts for complete orders, and that
        records of one order are pairwise told apart by their fingerprints.
        ``deep`` adds an explicit isomorphism search between any records
        whose fine fingerprints agree.
        """
        problems = []
        for n, entries in sorted(self._table_entries.items()):
            groups = []
            for e in entries:
                try:
                    g = self.group(e.name)
                except GroupError as exc:
                    problems.append(f"{e.name}: {exc}")
                    continue
                if g.order != e.order:
                    problems.append(f"{e.name}: declared order {e.order}, closure has {g.order}")
                groups.append((e, g))
            if n in self.complete_orders and n in KNOWN_COUNTS and len(entries) != KNOWN_COUNTS[n]:
                problems.append(f"order {n}: {len(entries)} records, {KNOWN_COUNTS[n]} classes exist")
            coarse: dict = {}
            for e, g in groups:
                coarse.setdefault(g.fingerprint, []).append((e, g))
            for clash in coarse.values():
                if len(clash) < 2:
                    continue
                unmarked = [e.name for e, _ in clash if e.split != "fine"]
                if unmarked:
                    problems.append(f"order {n}: fingerprint shared by unmarked {unmarked}")
                fine: dict = {}
                for e, g in clash:
                    fine.setdefault(fine_fingerprint(g.table), []).append((e, g))
                for same in fine.values():
                    for i in range(len(same)):
                        for j in range(i + 1, len(same)):
                            a, b = same[i], same[j]
                            if not deep or find_isomorphism(a[1].table, b[1].table) is not None:
                                problems.append(f"order {n}: {a[0].name} and {b[0].name} not told apart")
        return problems


# -- text format -----------------------------------------------------------------


def _parse_orders(spec: str) -> set[int]:
    out = set()
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-")
            out.update(range(int(lo), int(hi) + 1))
        else:
            out.add(int(part))
    return out


def parse_catalog(text: str) -> tuple[list[CatalogEntry], set[int]]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != FORMAT_LINE:
        raise CatalogError(f"missing header {FORMAT_LINE!r}")
    complete: set[int] = set()
    entries = []
    names = set()
    for ln in lines[1:]:
        if ln.startswith("complete "):
            complete |= _parse_orders(ln[len("complete "):])
            continue
        parts = ln.split()
        if len(parts) < 5:
            raise CatalogError(f"short record: {ln!r}")
        name, order, degree, split, *gens = parts
        if name in names:
            raise CatalogError(f"duplicate name {name!r}")
        names.add(name)
        try:
            order_i, degree_i = int(order), int(degree)
            perms = tuple(parse_cycles(g, degree_i) for g in gens)
        except (ValueError, GroupError) as exc:
            raise CatalogError(f"bad record {ln!r}: {exc}") from exc
        if split not in ("-", "fine"):
            raise CatalogError(f"bad split marker in {ln!r}")

        def build(perms=perms, degree=degree_i, name=name, order=order_i):
            labels = {"x": 0, "y": 1} if len(perms) > 1 else {"x": 0}
            g = FiniteGroup(perms, name=name, degree=degree, labels=labels, cap=max(order, 1))
            return g

        entries.append(CatalogEntry(name, order_i, build, split, tuple(gens)))
    return entries, complete


def load_catalog(path: Path | str | None = None, validate: bool = True) -> Catalog:
    path = Path(path) if path else DEFAULT_CATALOG_PATH
    try:
        text = path.read_text()
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    entries, complete = parse_catalog(text)
    cat = Catalog(entries, complete)
    if validate:
        problems = cat.validate()
        if problems:
            raise CatalogError("; ".join(problems))
    return cat


_DEFAULT: Catalog | None = None


def default_catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_catalog()
    return _DEFAULT


# -- writing the table from classified multiplication tables ----------------------


def _named_candidates(n: int) -> list[FiniteGroup]:
    if n == 1:
        return [families.cyclic(1)]
    out = []
    for factors in abelian_invariant_factors(n):
        out.append(families.cyclic(n) if len(factors) == 1 else families.abelian_product(*factors))
    if n % 2 == 0 and n // 2 >= 3:
        out.append(families.dihedral(n // 2))
    if n % 4 == 0 and n // 4 >= 2:
        out.append(families.generalized_quaternion(n // 4))
    if n == 12:
        out.append(FiniteGroup([parse_cycles("(1,2,3)", 4), parse_cycles("(1,2)(3,4)", 4)], name="A4"))
    if n == 24:
        out.append(FiniteGroup([parse_cycles("(1,2,3,4)"), parse_cycles("(1,2)", 4)], name="S4"))
    return out


def _coset_action(table: np.ndarray) -> list[tuple[int, ...]]:
    """Generators of a faithful action on cosets of a largest core-free subgroup."""
    g = group_from_table(table)
    best = g.trivial
    t, inv = g.table, g.inverse
    for sub in g.subgroup_lattice(cap=table.shape[0]):
        if sub.order <= best.order:
            continue
        core = sub.members
        elems = sub.elements()
        for x in range(g.order):
            conj = 0
            for h in elems:
                conj |= 1 << int(t[t[x, h], inv[x]])
            core &= conj
            if core == 1:
                break
        if core == 1:
            best = sub
    cosets: dict[int, int] = {}
    reps = []
    for x in range(g.order):
        if x in cosets:
            continue
        idx = len(reps)
        reps.append(x)
        for h in best.elements():
            cosets[int(t[x, h])] = idx
    gens = minimal_generators_of_table(t)
    return [tuple(cosets[int(t[s, r])] for r in reps) for s in gens]


def write_catalog_from_tables(reps: dict[int, list[np.ndarray]], path: Path) -> None:
    records = []
    for n in sorted(reps):
        named = _named_candidates(n)
        out = []
        anonymous = 0
        for t in reps[n]:
            match = next((c for c in named if find_isomorphism(t, c.table) is not None), None)
            if match is not None:
                out.append((match.name, match.degree, [format_cycles(p) for p in match.generators]))
                continue
            anonymous += 1
            perms = _coset_action(t)
            out.append((f"G{n}_{anonymous}", len(perms[0]), [format_cycles(p) for p in perms]))
        built = [(name, FiniteGroup([parse_cycles(s, deg) for s in gens], name=name, degree=deg), deg, gens) for name, deg, gens in out]
        prints: dict = {}
        for name, g, _, _ in built:
            prints.setdefault(g.fingerprint, []).append(name)
        named_order = {c.name: i for i, c in enumerate(named)}
        built.sort(key=lambda b: (named_order.get(b[0], len(named)), b[0]))
        for name, g, deg, gens in built:
            split = "fine" if len(prints[g.fingerprint]) > 1 else "-"
            records.append(f"{name:<10} {n:>4} {deg:>4}  {split:<4}  {' '.join(gens)}")
    orders = sorted(reps)
    header = [
        FORMAT_LINE,
        "# One representative per isomorphism class, generated by cyclic extensions",
        "# and checked against the known number of groups of each order.",
        f"complete {orders[0]}-{orders[-1]}",
        "# name  order  degree  split  generators (1-based cycle notation)",
    ]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(header + records) + "\n")
