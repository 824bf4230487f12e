"""Finite groups realized by permutation generators.

Elements are enumerated once by breadth-first closure and addressed by
integer handles afterwards: handle 0 is the identity, the rest follow
discovery order.  All arithmetic goes through a precomputed
multiplication table.

Permutations are 0-based tuples internally; the text form is 1-based cycle
notation such as ``(1,2,3)(4,5)``.  The product ``a*b`` applies ``b`` first,
so left-regular representations satisfy the presentations they come from.
"""

from __future__ import annotations

import hashlib
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

DEFAULT_ORDER_CAP = 1024
LATTICE_CAP = 128


class GroupError(ValueError):
    pass


class CapExceeded(GroupError):
    pass


class InvalidPermutation(GroupError):
    pass


class BadParameter(GroupError):
    pass


# -- permutations -----------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse 1-based cycle notation into a 0-based image tuple."""
    text = text.strip()
    if not text or _CYCLE_RE.sub("", text).strip():
        raise InvalidPermutation(f"not a product of cycles: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        body = body.replace(",", " ").split()
        try:
            cycles.append([int(p) - 1 for p in body])
        except ValueError as exc:
            raise InvalidPermutation(f"bad point in {text!r}") from exc
    top = max((p for c in cycles for p in c), default=-1) + 1
    if degree is None:
        degree = max(top, 1)
    elif top > degree:
        raise InvalidPermutation(f"{text!r} moves points beyond degree {degree}")
    image = list(range(degree))
    seen = set()
    for cyc in cycles:
        if any(p < 0 for p in cyc):
            raise InvalidPermutation(f"points are 1-based: {text!r}")
        if seen.intersection(cyc) or len(set(cyc)) != len(cyc):
            raise InvalidPermutation(f"cycles overlap in {text!r}")
        seen.update(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            image[a] = b
    return tuple(image)


def format_cycles(perm) -> str:
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out.append("(" + ",".join(str(p + 1) for p in cyc) + ")")
    return "".join(out) or "()"


def _check_perm(perm, degree: int) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if len(perm) != degree or sorted(perm) != list(range(degree)):
        raise InvalidPermutation(f"not a permutation of {degree} points: {perm}")
    return perm


# -- groups -----------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as a bitmask over the parent's element handles."""

    parent: "FiniteGroup"
    members: int
    order: int
    gens: tuple[int, ...] = ()

    def __contains__(self, g: int) -> bool:
        return bool(self.members >> g & 1)

    def elements(self) -> list[int]:
        return [i for i in range(self.parent.order) if self.members >> i & 1]

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name})"


class FiniteGroup:
    """A permutation group with all elements enumerated.

    ``labels`` maps distinguished generator names (``"x"``, ``"y"``) to
    positions in ``generators``.
    """

    def __init__(
        self,
        generators,
        name: str = "",
        degree: int | None = None,
        labels: dict[str, int] | None = None,
        cap: int = DEFAULT_ORDER_CAP,
    ):
        gens = list(generators)
        if degree is None:
            degree = max((len(g) for g in gens), default=1)
        if degree < 1:
            raise InvalidPermutation("degree must be positive")
        self.degree = degree
        self.generators = tuple(_check_perm(g, degree) for g in gens)
        self.name = name
        self.labels = dict(labels or {})
        self._enumerate(cap)

    def _enumerate(self, cap: int) -> None:
        ident = tuple(range(self.degree))
        gens = [np.asarray(g, dtype=np.int32) for g in self.generators]
        index = {ident: 0}
        perms = [np.arange(self.degree, dtype=np.int32)]
        parent = [-1]
        via = [-1]
        i = 0
        while i < len(perms):
            cur = perms[i]
            for k, g in enumerate(gens):
                nxt = cur[g]
                key = tuple(nxt.tolist())
                if key not in index:
                    if len(perms) >= cap:
                        raise CapExceeded(f"closure of {self.name or 'group'} exceeds {cap}")
                    index[key] = len(perms)
                    perms.append(nxt)
                    parent.append(i)
                    via.append(k)
            i += 1
        n = len(perms)
        self.order = n
        self.elements = np.stack(perms)
        self._index = index
        self._parent = parent
        self._via = via
        self.generator_handles = tuple(index[g] for g in self.generators)

        dtype = np.int16 if n < 2**15 else np.int32
        # right multiplication by each generator
        right = []
        for g in gens:
            moved = self.elements[:, g]
            right.append(np.fromiter((index[tuple(r.tolist())] for r in moved), dtype=dtype, count=n))
        table = np.empty((n, n), dtype=dtype)
        table[:, 0] = np.arange(n)
        for j in range(1, n):
            table[:, j] = right[via[j]][table[:, parent[j]]]
        self.table = table
        self.inverse = np.argmax(table == 0, axis=1).astype(dtype)

        orders = np.zeros(n, dtype=np.int32)
        cur = np.arange(n)
        ar = np.arange(n)
        k = 1
        while (orders == 0).any():
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            cur = table[cur, ar]
            k += 1
        self.element_orders = orders

    # basic arithmetic ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        k %= int(self.element_orders[a])
        out = 0
        for _ in range(k):
            out = int(self.table[out, a])
        return out

    def product(self, handles) -> int:
        out = 0
        for h in handles:
            out = int(self.table[out, h])
        return out

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        return self.product((self.inverse[a], self.inverse[b], a, b))

    def element_order(self, a: int) -> int:
        return int(self.element_orders[a])

    def handle(self, perm) -> int:
        try:
            return self._index[tuple(int(p) for p in perm)]
        except KeyError:
            raise GroupError(f"{perm} is not an element of {self.name}") from None

    def named(self, label: str) -> int:
        return self.generator_handles[self.labels[label]]

    def perm(self, a: int) -> tuple[int, ...]:
        return tuple(self.elements[a].tolist())

    def word(self, a: int) -> list[int]:
        """Generator indices whose product, left to right, is element ``a``."""
        out = []
        while a:
            out.append(self._via[a])
            a = self._parent[a]
        return out[::-1]

    # structure ------------------------------------------------------------

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @cached_property
    def order_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.element_orders.tolist()).items()))

    @cached_property
    def exponent(self) -> int:
        out = 1
        for o in self.order_histogram:
            out = out * o // gcd(out, o)
        return out

    def elements_of_order(self, n: int) -> np.ndarray:
        return np.flatnonzero(self.element_orders == n)

    @cached_property
    def centralizer_sizes(self) -> np.ndarray:
        return (self.table == self.table.T).sum(axis=1)

    @cached_property
    def center(self) -> Subgroup:
        full = self.centralizer_sizes == self.order
        return self.generated_subgroup(np.flatnonzero(full).tolist())

    @cached_property
    def derived_subgroup(self) -> Subgroup:
        t = self.table
        inv = self.inverse
        # [a,b] = a^-1 b^-1 a b for every pair, vectorized
        ab = t  # a*b
        ainv_binv = t[inv[:, None], inv[None, :]]
        comm = t[ainv_binv, ab]
        return self.generated_subgroup(np.unique(comm).tolist())

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, 1, 1)

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, (1 << self.order) - 1, self.order, self.generator_handles)

    def generated_subgroup(self, seed) -> Subgroup:
        """The smallest subgroup containing ``seed``."""
        return self.join(self.trivial, seed)

    def join(self, sub: Subgroup, extra) -> Subgroup:
        """``<sub, extra>``; each new generator at least doubles the order."""
        table = self.table
        for g in extra:
            g = int(g)
            if sub.members >> g & 1:
                continue
            gens = sub.gens + (g,)
            members = 1
            elems = [0]
            i = 0
            while i < len(elems):
                row = table[elems[i]]
                for s in gens:
                    p = int(row[s])
                    if not members >> p & 1:
                        members |= 1 << p
                        elems.append(p)
                i += 1
            sub = Subgroup(self, members, len(elems), gens)
        return sub

    def cyclic_subgroup(self, g: int) -> Subgroup:
        return self.join(self.trivial, [g])

    def subgroup_lattice(self, cap: int = LATTICE_CAP) -> list[Subgroup]:
        """Every subgroup exactly once, sorted by (order, member handles)."""
        if self.order > cap:
            raise CapExceeded(f"subgroup lattice limited to order {cap}, got {self.order}")
        cyclic = {}
        for g in range(self.order):
            c = self.cyclic_subgroup(g)
            cyclic.setdefault(c.members, (c, g))
        found = {m: s for m, (s, _) in cyclic.items()}
        frontier = list(found.values())
        cyc_gens = [g for _, g in cyclic.values()]
        while frontier:
            nxt = []
            for sub in frontier:
                for g in cyc_gens:
                    if sub.members >> g & 1:
                        continue
                    joined = self.join(sub, [g])
                    if joined.members not in found:
                        found[joined.members] = joined
                        nxt.append(joined)
            frontier = nxt
        return sorted(found.values(), key=lambda s: (s.order, s.elements()))

    def is_normal(self, sub: Subgroup) -> bool:
        elems = sub.elements()
        t, inv = self.table, self.inverse
        for g in self.generator_handles:
            for h in elems:
                if not sub.members >> int(t[t[inv[g], h], g]) & 1:
                    return False
        return True

    # identity -------------------------------------------------------------

    @cached_property
    def fingerprint(self) -> tuple:
        """(abelian, element-order histogram, |Z(G)|, |G'|)."""
        return (
            self.is_abelian,
            tuple(self.order_histogram.items()),
            self.center.order,
            self.derived_subgroup.order,
        )

    @cached_property
    def checksum(self) -> str:
        """Digest of the element table; witnesses record it to detect drift."""
        h = hashlib.sha256()
        h.update(f"{self.degree}:{self.order}:".encode())
        h.update(self.elements.astype(np.int32).tobytes())
        return h.hexdigest()[:16]

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


def enumerate_elements(generators, name: str = "", cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from generators given as tuples or cycle strings."""
    gens = list(generators)
    if any(isinstance(g, str) for g in gens):
        degree = 1
        for g in gens:
            if isinstance(g, str):
                degree = max(degree, len(parse_cycles(g)))
            else:
                degree = max(degree, len(g))
        gens = [parse_cycles(g, degree) if isinstance(g, str) else g for g in gens]
    return FiniteGroup(gens, name=name, cap=cap)


def group_from_table(table: np.ndarray, name: str = "") -> FiniteGroup:
    """Left-regular permutation realization of an abstract multiplication table."""
    n = table.shape[0]
    gens = minimal_generators_of_table(table)
    perms = [tuple(int(x) for x in table[g]) for g in gens]
    return FiniteGroup(perms or [tuple(range(n))], name=name, degree=n)


def minimal_generators_of_table(table: np.ndarray) -> list[int]:
    """A short generating set chosen greedily (largest new subgroup first)."""
    n = table.shape[0]
    members = {0}
    gens: list[int] = []

    def close(seed_members, g):
        elems = list(seed_members)
        mem = set(elems)
        gs = gens + [g]
        i = 0
        while i < len(elems):
            for h in gs:
                p = int(table[elems[i], h])
                if p not in mem:
                    mem.add(p)
                    elems.append(p)
            i += 1
        return mem

    while len(members) < n:
        best = None
        for g in range(n):
            if g in members:
                continue
            cand = close(members, g)
            if best is None or len(cand) > len(best[1]):
                best = (g, cand)
        gens.append(best[0])
        members = best[1]
    return gens
