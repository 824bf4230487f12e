"""Existence of generating vectors for a concrete finite group.

A ``(h; n_1..n_r)``-generating vector is ``(a_1, b_1, ..., a_h, b_h,
c_1, ..., c_r)`` with ``c_j`` of order ``n_j``, trivial product
``prod [a_i, b_i] * prod c_j`` and generating the whole group.

The search is a dynamic program whose states are pairs (subgroup
generated so far, running product).  Hyperbolic pairs are folded in first
using a table of (``<a, b>``, ``[a, b]``) over all pairs, then one layer
per branch point.  Each layer maps a subgroup to the boolean vector of
reachable products, so a layer costs ``#subgroups x #elements`` table
lookups regardless of how many tuples it stands for.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, Subgroup
from .signatures import Signature

DEFAULT_BUDGET = 10**8

INVERSE_FIRST = "a^-1 b^-1 a b"
INVERSE_LAST = "a b a^-1 b^-1"


class GenvecError(ValueError):
    pass


class ShapeMismatch(GenvecError):
    pass


class BudgetExceeded(GenvecError):
    def __init__(self, transitions: int, budget: int):
        super().__init__(f"search stopped after {transitions} transitions (budget {budget})")
        self.transitions = transitions
        self.budget = budget


@dataclass(frozen=True)
class GeneratingVector:
    hyperbolic_pairs: tuple[tuple[int, int], ...]
    cone_elements: tuple[int, ...]

    def entries(self) -> tuple[int, ...]:
        return tuple(x for pair in self.hyperbolic_pairs for x in pair) + self.cone_elements

    def to_json(self) -> dict:
        return {"pairs": [list(p) for p in self.hyperbolic_pairs], "cones": list(self.cone_elements)}

    @classmethod
    def from_json(cls, data: dict) -> "GeneratingVector":
        return cls(tuple(tuple(p) for p in data["pairs"]), tuple(data["cones"]))


@dataclass(frozen=True)
class ExistenceResult:
    witness: GeneratingVector | None
    exhaustive: bool
    transitions: int = 0

    @property
    def found(self) -> bool:
        return self.witness is not None


class Prefilter(enum.Enum):
    RULED_OUT = "ruled-out"
    UNKNOWN = "unknown"


def commutator(G: FiniteGroup, a: int, b: int, convention: str = INVERSE_FIRST) -> int:
    if convention == INVERSE_FIRST:
        return G.commutator(a, b)
    if convention == INVERSE_LAST:
        return G.product((a, b, G.inverse[a], G.inverse[b]))
    raise GenvecError(f"unknown commutator convention {convention!r}")


def verify_generating_vector(G: FiniteGroup, sig: Signature, v: GeneratingVector, convention: str = INVERSE_FIRST) -> bool:
    if len(v.hyperbolic_pairs) != sig.h or len(v.cone_elements) != sig.r:
        raise ShapeMismatch(
            f"vector has {len(v.hyperbolic_pairs)} pairs and {len(v.cone_elements)} cone elements, "
            f"signature {sig} needs {sig.h} and {sig.r}"
        )
    if any(not 0 <= x < G.order for x in v.entries()):
        return False
    if sorted(G.element_order(c) for c in v.cone_elements) != list(sig.periods):
        return False
    prod = 0
    for a, b in v.hyperbolic_pairs:
        prod = G.mul(prod, commutator(G, a, b, convention))
    for c in v.cone_elements:
        prod = G.mul(prod, c)
    if prod != 0:
        return False
    return G.generated_subgroup(v.entries()).order == G.order


def abelian_prefilter(G: FiniteGroup, sig: Signature) -> Prefilter:
    """With trivial commutators a single branch point would need ``c_1 = e``."""
    if G.is_abelian and sig.r == 1:
        return Prefilter.RULED_OUT
    return Prefilter.UNKNOWN


# -- search state shared per group -----------------------------------------------


class _GroupIndex:
    """Memoized joins and pair contributions for one group (one convention)."""

    def __init__(self, G: FiniteGroup, convention: str):
        self.G = G
        self.convention = convention
        self.subgroups: dict[int, Subgroup] = {1: G.trivial}
        self._join_elem: dict[tuple[int, int], int] = {}
        self._join_sub: dict[tuple[int, int], int] = {}
        self._by_target: dict[tuple[int, int], list[tuple[int, np.ndarray]]] = {}
        self._pairs: list[tuple[int, np.ndarray]] | None = None
        self.pair_witness: dict[tuple[int, int], tuple[int, int]] = {}

    def join_elem(self, mask: int, g: int) -> int:
        key = (mask, g)
        out = self._join_elem.get(key)
        if out is None:
            if mask >> g & 1:
                out = mask
            else:
                sub = self.G.join(self.subgroups[mask], [g])
                self.subgroups.setdefault(sub.members, sub)
                out = sub.members
            self._join_elem[key] = out
        return out

    def join_sub(self, mask: int, other: int) -> int:
        key = (mask, other)
        out = self._join_sub.get(key)
        if out is None:
            out = mask
            for g in self.subgroups[other].gens:
                out = self.join_elem(out, g)
            self._join_sub[key] = out
        return out

    def targets(self, mask: int, n: int) -> list[tuple[int, np.ndarray]]:
        """Elements of order ``n`` grouped by the subgroup they extend ``mask`` to."""
        key = (mask, n)
        out = self._by_target.get(key)
        if out is None:
            groups: dict[int, list[int]] = {}
            for c in self.G.elements_of_order(n).tolist():
                groups.setdefault(self.join_elem(mask, c), []).append(c)
            out = [(t, np.array(cs, dtype=np.int64)) for t, cs in groups.items()]
            self._by_target[key] = out
        return out

    def pairs(self) -> list[tuple[int, np.ndarray]]:
        """(mask of <a,b>, commutator values) over all pairs."""
        if self._pairs is None:
            G = self.G
            n = G.order
            contrib: dict[int, np.ndarray] = {}
            for a in range(n):
                ca = self.join_elem(1, a)
                for b in range(n):
                    t = self.join_elem(ca, b)
                    k = commutator(G, a, b, self.convention)
                    arr = contrib.get(t)
                    if arr is None:
                        arr = contrib[t] = np.zeros(n, dtype=bool)
                    if not arr[k]:
                        arr[k] = True
                        self.pair_witness[(t, k)] = (a, b)
            self._pairs = [(t, np.flatnonzero(arr)) for t, arr in contrib.items()]
        return self._pairs


def _index(G: FiniteGroup, convention: str) -> _GroupIndex:
    cache = G.__dict__.setdefault("_genvec_index", {})
    idx = cache.get(convention)
    if idx is None:
        idx = cache[convention] = _GroupIndex(G, convention)
    return idx


# -- the search ----------------------------------------------------------------------


def exists_generating_vector(
    G: FiniteGroup,
    sig: Signature,
    budget: int = DEFAULT_BUDGET,
    convention: str = INVERSE_FIRST,
) -> ExistenceResult:
    """Decide whether ``G`` has a generating vector for ``sig``.

    Returns a verified witness, or ``witness=None`` with ``exhaustive=True``
    once the whole space has been covered.  Raises :class:`BudgetExceeded`
    rather than answering when the transition budget runs out.
    """
    orders = set(G.element_orders.tolist())
    if any(n not in orders for n in sig.periods):
        return ExistenceResult(None, True)
    if abelian_prefilter(G, sig) is Prefilter.RULED_OUT:
        return ExistenceResult(None, True)

    idx = _index(G, convention)
    n = G.order
    table = G.table
    full = G.whole.members
    spent = 0

    start = np.zeros(n, dtype=bool)
    start[0] = True
    layers: list[dict[int, np.ndarray]] = [{1: start}]
    steps: list[tuple[str, int]] = []

    def charge(amount):
        nonlocal spent
        spent += amount
        if spent > budget:
            raise BudgetExceeded(spent, budget)

    for _ in range(sig.h):
        prev = layers[-1]
        nxt: dict[int, np.ndarray] = {}
        pairs = idx.pairs()
        for mask, arr in prev.items():
            ps = np.flatnonzero(arr)
            for t, ks in pairs:
                charge(len(ps) * len(ks))
                target = idx.join_sub(mask, t)
                out = nxt.get(target)
                if out is None:
                    out = nxt[target] = np.zeros(n, dtype=bool)
                out[table[np.ix_(ps, ks)].ravel()] = True
        layers.append(nxt)
        steps.append(("pair", 0))

    for period in sig.periods:
        prev = layers[-1]
        nxt = {}
        for mask, arr in prev.items():
            ps = np.flatnonzero(arr)
            for target, cs in idx.targets(mask, period):
                charge(len(ps) * len(cs))
                out = nxt.get(target)
                if out is None:
                    out = nxt[target] = np.zeros(n, dtype=bool)
                out[table[np.ix_(ps, cs)].ravel()] = True
        layers.append(nxt)
        steps.append(("cone", period))

    final = layers[-1].get(full)
    if final is None or not final[0]:
        return ExistenceResult(None, True, spent)

    witness = _backtrack(G, idx, layers, steps, full)
    if not verify_generating_vector(G, sig, witness, convention):
        raise AssertionError(f"search produced an invalid vector for {G.name} {sig}")
    return ExistenceResult(witness, True, spent)


def _backtrack(G, idx: _GroupIndex, layers, steps, full) -> GeneratingVector:
    inv = G.inverse
    table = G.table
    mask, p = full, 0
    cones: list[int] = []
    pairs: list[tuple[int, int]] = []
    for layer, (kind, period) in zip(reversed(layers[:-1]), reversed(steps)):
        chosen = None
        if kind == "cone":
            for prev_mask, arr in layer.items():
                for target, cs in idx.targets(prev_mask, period):
                    if target != mask:
                        continue
                    for c in cs.tolist():
                        q = int(table[p, inv[c]])
                        if arr[q]:
                            chosen = (prev_mask, q, c)
                            break
                    if chosen:
                        break
                if chosen:
                    break
            mask, p, c = chosen
            cones.append(c)
        else:
            for prev_mask, arr in layer.items():
                for t, ks in idx.pairs():
                    if idx.join_sub(prev_mask, t) != mask:
                        continue
                    for k in ks.tolist():
                        q = int(table[p, inv[k]])
                        if arr[q]:
                            chosen = (prev_mask, q, idx.pair_witness[(t, k)])
                            break
                    if chosen:
                        break
                if chosen:
                    break
            mask, p, ab = chosen
            pairs.append(ab)
    return GeneratingVector(tuple(reversed(pairs)), tuple(reversed(cones)))


def brute_force_exists(G: FiniteGroup, sig: Signature, convention: str = INVERSE_FIRST) -> bool:
    """Independent check by enumerating tuples directly (small groups only).

    The last cone element is solved for rather than looped over; everything
    else is plain enumeration.
    """
    n = G.order
    t = G.table.tolist()
    inv = G.inverse.tolist()
    orders = G.element_orders.tolist()
    periods = sig.periods
    by_order = {m: [g for g in range(n) if orders[g] == m] for m in set(periods)}
    comm = [[commutator(G, a, b, convention) for b in range(n)] for a in range(n)]
    all_pairs = [(a, b) for a in range(n) for b in range(n)]

    def generates(entries):
        return G.generated_subgroup(entries).order == n

    for hyp in itertools.product(all_pairs, repeat=sig.h):
        prod = 0
        for a, b in hyp:
            prod = t[prod][comm[a][b]]
        flat = [x for ab in hyp for x in ab]
        if not periods:
            if prod == 0 and generates(flat):
                return True
            continue
        for head in itertools.product(*(by_order[m] for m in periods[:-1])):
            q = prod
            for c in head:
                q = t[q][c]
            last = inv[q]
            if orders[last] == periods[-1] and generates(flat + list(head) + [last]):
                return True
    return False
