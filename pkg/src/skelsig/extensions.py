"""Enumerate all groups of small order as cyclic extensions.

Every solvable group ``G`` has a normal subgroup ``N`` of prime index
``p``.  Writing ``g`` for a coset representative, ``G`` is determined by
the automorphism ``phi = (n -> g n g^-1)`` of ``N`` and ``z = g^p`` in
``N``, subject to ``phi(z) = z`` and ``phi^p = conj(z)``.  All groups of
order below 60 are solvable, so running over every ``(N, p, phi, z)`` and
discarding isomorphic duplicates yields every isomorphism class.

``python -m skelsig.extensions [max_order]`` regenerates the shipped
catalog table.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import numpy as np

from .isomorphism import automorphisms, find_isomorphism, fine_fingerprint

log = logging.getLogger(__name__)

# number of isomorphism classes of groups of order n (OEIS A000001)
KNOWN_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
    13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2,
    23: 1, 24: 15, 25: 2, 26: 2, 27: 5, 28: 4, 29: 1, 30: 4, 31: 1, 32: 51,
}


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _compose(a, b):
    """``a`` after ``b``."""
    return tuple(a[i] for i in b)


def _closure(gens, ident):
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = _compose(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _conjugacy_reps(elems: list, ident) -> list:
    """One representative per conjugacy class of a permutation group."""
    gens: list = []
    group = {ident}
    for a in elems:
        if a not in group:
            gens.append(a)
            group = _closure(gens, ident)
    inverse = {}
    for a in elems:
        inv = [0] * len(a)
        for i, x in enumerate(a):
            inv[x] = i
        inverse[a] = tuple(inv)
    seen = set()
    reps = []
    for a in elems:
        if a in seen:
            continue
        reps.append(a)
        seen.add(a)
        queue = [a]
        for b in queue:
            for g in gens:
                c = _compose(g, _compose(b, inverse[g]))
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
    return reps


def extension_table(nt: np.ndarray, p: int, phi, z: int) -> np.ndarray:
    """Multiplication table of ``<N, g>`` with ``g n g^-1 = phi(n)``, ``g^p = z``.

    Element ``i*|N| + a`` stands for ``a g^i``.
    """
    n = nt.shape[0]
    phi = np.asarray(phi)
    powers = [np.arange(n)]
    for _ in range(p - 1):
        powers.append(phi[powers[-1]])
    out = np.empty((p * n, p * n), dtype=np.int64)
    for i in range(p):
        for j in range(p):
            block = nt[:, powers[i]]  # a * phi^i(b)
            k = i + j
            if k >= p:
                block = nt[block, z]
                k -= p
            out[i * n:(i + 1) * n, j * n:(j + 1) * n] = block + k * n
    return out


def cyclic_extensions(nt: np.ndarray, p: int):
    """Yield tables for all cyclic extensions of ``N`` by ``C_p`` (with repeats)."""
    n = nt.shape[0]
    ident = tuple(range(n))
    inv = np.argmax(nt == 0, axis=1)
    inner = {}
    for z in range(n):
        conj = tuple(int(nt[nt[z, b], inv[z]]) for b in range(n))
        inner.setdefault(conj, []).append(z)
    auts = automorphisms(nt)

    def power(a, k):
        out = ident
        for _ in range(k):
            out = _compose(a, out)
        return out

    usable = [a for a in auts if power(a, p) in inner]
    for phi in _conjugacy_reps(usable, ident):
        for z in inner[power(phi, p)]:
            if phi[z] == z:
                yield extension_table(nt, p, phi, z)


def is_group_table(t: np.ndarray) -> bool:
    """Identity at 0, Latin square, associative."""
    n = t.shape[0]
    ar = np.arange(n)
    if not (t[0] == ar).all() or not (t[:, 0] == ar).all():
        return False
    if any(len(set(row)) != n for row in t.tolist()):
        return False
    lhs = t[t[:, :, None], ar[None, None, :]]
    rhs = t[ar[:, None, None], t[None, :, :]]
    return bool((lhs == rhs).all())


def classify_orders(max_order: int) -> dict[int, list[np.ndarray]]:
    """Representative tables for every isomorphism class of order <= max_order."""
    reps: dict[int, list[np.ndarray]] = {1: [np.zeros((1, 1), dtype=np.int64)]}
    for n in range(2, max_order + 1):
        found: list[np.ndarray] = []
        keyed: dict = {}
        for p in _primes(n):
            for nt in reps[n // p]:
                for t in cyclic_extensions(nt, p):
                    key = fine_fingerprint(t)
                    if any(find_isomorphism(t, other) for other in keyed.get(key, ())):
                        continue
                    keyed.setdefault(key, []).append(t)
                    found.append(t)
        found.sort(key=fine_fingerprint)
        reps[n] = found
        log.info("order %d: %d groups", n, len(found))
        expected = KNOWN_COUNTS.get(n)
        if expected is not None and len(found) != expected:
            raise RuntimeError(f"order {n}: found {len(found)} classes, expected {expected}")
    return reps


def main(argv=None) -> int:
    from .catalog import DEFAULT_CATALOG_PATH, write_catalog_from_tables

    argv = sys.argv[1:] if argv is None else argv
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    max_order = int(argv[0]) if argv else 32
    out = Path(argv[1]) if len(argv) > 1 else DEFAULT_CATALOG_PATH
    reps = classify_orders(max_order)
    write_catalog_from_tables(reps, out)
    log.info("wrote %s", out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
