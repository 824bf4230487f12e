"""Isomorphism search and invariants on multiplication tables.

Only meant for the small orders of the catalog (up to a few hundred
elements); the search is a plain backtrack over generator images with the
homomorphism property checked edge by edge on the Cayley graph.
"""

from __future__ import annotations

from collections import Counter

import numpy as np


def element_invariants(table: np.ndarray) -> list[tuple[int, int, int]]:
    """Per element: (order, centralizer size, number of square roots)."""
    n = table.shape[0]
    ar = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = ar.copy()
    k = 1
    while (orders == 0).any():
        orders[(cur == 0) & (orders == 0)] = k
        cur = table[cur, ar]
        k += 1
    cent = (table == table.T).sum(axis=1)
    roots = np.bincount(table[ar, ar], minlength=n)
    return list(zip(orders.tolist(), cent.tolist(), roots.tolist()))


def fine_fingerprint(table: np.ndarray) -> tuple:
    """Isomorphism invariant finer than order statistics alone."""
    inv = element_invariants(table)
    n = table.shape[0]
    sq = table[np.arange(n), np.arange(n)]
    # invariants of squares, paired with the element's own
    pairs = Counter((inv[g], inv[int(sq[g])]) for g in range(n))
    return (n, tuple(sorted(Counter(inv).items())), tuple(sorted(pairs.items())))


def _generators(table) -> list[int]:
    from .groups import minimal_generators_of_table

    return minimal_generators_of_table(table)


def _extend(ta, tb, gens, imgs, n):
    """Map <gens> -> <imgs> along the Cayley graph, or None on conflict."""
    f = {0: 0}
    used = {0}
    queue = [0]
    i = 0
    while i < len(queue):
        a = queue[i]
        fa = f[a]
        ra, rb = ta[a], tb[fa]
        for g, h in zip(gens, imgs):
            x = ra[g]
            y = rb[h]
            got = f.get(x)
            if got is None:
                if y in used:
                    return None
                f[x] = y
                used.add(y)
                queue.append(x)
            elif got != y:
                return None
        i += 1
    return f


def _search(ta, tb, inv_a, inv_b, find_all: bool):
    n = len(ta)
    gens = _generators(np.asarray(ta))
    by_inv: dict = {}
    for h, key in enumerate(inv_b):
        by_inv.setdefault(key, []).append(h)
    cands = [by_inv.get(inv_a[g], []) for g in gens]
    out = []
    imgs: list[int] = []

    def rec(depth):
        if depth == len(gens):
            f = _extend(ta, tb, gens, imgs, n)
            if f is not None and len(f) == n:
                out.append(tuple(f[a] for a in range(n)))
                return not find_all
            return False
        for h in cands[depth]:
            imgs.append(h)
            if _extend(ta, tb, gens[: depth + 1], imgs, n) is not None:
                if rec(depth + 1):
                    return True
            imgs.pop()
        return False

    rec(0)
    return out


def find_isomorphism(table_a: np.ndarray, table_b: np.ndarray) -> tuple[int, ...] | None:
    """An isomorphism as a tuple ``f`` with ``f[a]`` the image of ``a``, or None."""
    if table_a.shape != table_b.shape:
        return None
    inv_a = element_invariants(table_a)
    inv_b = element_invariants(table_b)
    if Counter(inv_a) != Counter(inv_b):
        return None
    found = _search(table_a.tolist(), table_b.tolist(), inv_a, inv_b, find_all=False)
    return found[0] if found else None


def are_isomorphic(table_a: np.ndarray, table_b: np.ndarray) -> bool:
    return find_isomorphism(table_a, table_b) is not None


def automorphisms(table: np.ndarray) -> list[tuple[int, ...]]:
    """All automorphisms, each as an image tuple over element handles."""
    inv = element_invariants(table)
    t = table.tolist()
    return _search(t, t, inv, inv, find_all=True)
