"""Named group families with distinguished generators ``x`` and ``y``."""

from __future__ import annotations

import re

from .groups import DEFAULT_ORDER_CAP, BadParameter, CapExceeded, FiniteGroup


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise CapExceeded(f"order {order} exceeds cap {cap}")


def cyclic(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise BadParameter(f"cyclic group needs n >= 1, got {n}")
    _check_cap(n, cap)
    x = tuple((i + 1) % n for i in range(n))
    return FiniteGroup([x], name=f"C{n}", degree=n, labels={"x": 0}, cap=cap)


def dihedral(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of order ``2n``: rotation ``x``, reflection ``y``."""
    if n < 2:
        raise BadParameter(f"dihedral group needs n >= 2, got {n}")
    _check_cap(2 * n, cap)
    if n == 2:
        x, y = (1, 0, 3, 2), (2, 3, 0, 1)
    else:
        x = tuple((i + 1) % n for i in range(n))
        y = tuple((-i) % n for i in range(n))
    return FiniteGroup([x, y], name=f"D{n}", labels={"x": 0, "y": 1}, cap=cap)


def generalized_quaternion(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """``<x, y | x^n = y^2, y^-1 x y = x^-1>`` of order ``4n`` (dicyclic).

    Realized by left multiplication on the normal forms ``x^k y^s``.
    """
    if n < 2:
        raise BadParameter(f"generalized quaternion group needs n >= 2, got {n}")
    m = 2 * n
    _check_cap(2 * m, cap)

    def mul(a, b):
        (i, s), (j, t) = a, b
        if s == 0:
            return (i + j) % m, t
        # y x^j = x^-j y, and y^2 = x^n
        k = i - j
        if t == 1:
            return (k + n) % m, 0
        return k % m, 1

    forms = [(k, s) for s in (0, 1) for k in range(m)]
    pos = {f: i for i, f in enumerate(forms)}
    x = tuple(pos[mul((1, 0), f)] for f in forms)
    y = tuple(pos[mul((0, 1), f)] for f in forms)
    return FiniteGroup([x, y], name=f"Q{4 * n}", labels={"x": 0, "y": 1}, cap=cap)


def abelian_product(*factors: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Direct product of cyclic groups, realized by disjoint cycles."""
    if not factors or any(f < 2 for f in factors):
        raise BadParameter(f"abelian product needs factors >= 2, got {factors}")
    order = 1
    for f in factors:
        order *= f
    _check_cap(order, cap)
    degree = sum(factors)
    gens = []
    start = 0
    for f in factors:
        g = list(range(degree))
        for i in range(f):
            g[start + i] = start + (i + 1) % f
        gens.append(tuple(g))
        start += f
    labels = {"x": 0, "y": 1} if len(factors) > 1 else {"x": 0}
    return FiniteGroup(gens, name="x".join(f"C{f}" for f in factors), labels=labels, cap=cap)


FAMILIES = {
    "Cyclic": cyclic,
    "Dihedral": dihedral,
    "GeneralizedQuaternion": generalized_quaternion,
    "AbelianProduct": abelian_product,
}


def make_family(kind: str, *params: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    try:
        build = FAMILIES[kind]
    except KeyError:
        raise BadParameter(f"unknown family {kind!r}") from None
    return build(*params, cap=cap)


_NAME_RE = re.compile(r"^(?:(C\d+(?:xC\d+)*)|D(\d+)|Q(\d+))$")


def family_from_name(name: str, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup | None:
    """Rebuild a family group from its name (``C6xC2``, ``D5``, ``Q12``), else None."""
    m = _NAME_RE.match(name)
    if not m:
        return None
    if m.group(1):
        factors = [int(f) for f in m.group(1)[1:].split("xC")]
        if len(factors) == 1:
            return cyclic(factors[0], cap=cap)
        return abelian_product(*factors, cap=cap)
    if m.group(2):
        return dihedral(int(m.group(2)), cap=cap)
    order = int(m.group(3))
    if order % 4:
        return None
    return generalized_quaternion(order // 4, cap=cap)
