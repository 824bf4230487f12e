"""Regions of the skeletal plane and their lattice points.

Points are ``(h, r)``: quotient genus and number of branch points.  Every
region here is an intersection of half-planes ``a*h + b*r <= c`` with
rational coefficients, evaluated exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .signatures import SkeletalPoint, check_genus


@dataclass(frozen=True)
class HalfPlane:
    """``a*h + b*r <= c``."""

    a: Fraction
    b: Fraction
    c: Fraction

    def holds(self, h, r) -> bool:
        return self.a * h + self.b * r <= self.c


@dataclass(frozen=True)
class Region:
    tag: str
    genus: int
    constraints: tuple[HalfPlane, ...]
    group_order: int | None = None

    def __contains__(self, p) -> bool:
        return contains(self, p)

    def __str__(self):
        if self.tag == "L":
            return f"L({self.genus},{self.group_order})"
        return f"{self.tag}({self.genus})"


def _hp(a, b, c) -> HalfPlane:
    return HalfPlane(Fraction(a), Fraction(b), Fraction(c))


_QUADRANT = (_hp(-1, 0, 0), _hp(0, -1, 0))


def k_sigma(sigma: int) -> int:
    check_genus(sigma)
    return sigma // 3


def region_t(sigma: int) -> Region:
    """``r <= 2*sigma + 2 - 4h``: every skeletal point of genus ``sigma``."""
    check_genus(sigma)
    return Region("T", sigma, _QUADRANT + (_hp(4, 1, 2 * sigma + 2),))


def region_l(sigma: int, order: int) -> Region:
    """Points reachable by groups of order at least ``order``."""
    check_genus(sigma)
    if order < 2:
        raise ValueError(f"group order bound must be >= 2, got {order}")
    bound = 4 * Fraction(sigma - 1 + order, order)
    return Region("L", sigma, _QUADRANT + (_hp(4, 1, bound),), group_order=order)


def region_s(sigma: int) -> Region:
    """Triangle between ``r = sigma+2-4h`` and ``r = sigma+2-k-2h``."""
    k = k_sigma(sigma)
    return Region(
        "S",
        sigma,
        (_hp(-1, 0, 0), _hp(4, 1, sigma + 2), _hp(-2, -1, -(sigma + 2 - k))),
    )


def contains(region: Region, p) -> bool:
    h, r = p
    return all(c.holds(h, r) for c in region.constraints)


def gap_allowed(sigma: int, p) -> bool:
    """False for points strictly between the hyperelliptic and C3 lines, bar ``(0, sigma+3)``."""
    h, r = p
    if (h, r) == (0, sigma + 3):
        return True
    return not (sigma + 2 - 3 * h < r < 2 * sigma + 2 - 4 * h)


def is_hyperbolic_point(p) -> bool:
    """Whether a quotient of genus ``h`` with ``r`` cone points can be hyperbolic at all."""
    h, r = p
    if h >= 2:
        return True
    if h == 1:
        return r >= 1
    return r >= 3


def t_lattice_points(sigma: int) -> list[SkeletalPoint]:
    check_genus(sigma)
    return [
        SkeletalPoint(h, r)
        for h in range((2 * sigma + 2) // 4 + 1)
        for r in range(2 * sigma + 2 - 4 * h + 1)
    ]


def lattice_points(region: Region, h_max: int, r_max: int) -> list[SkeletalPoint]:
    """Integer points of ``region`` inside the box ``[0,h_max] x [0,r_max]``.

    Each column ``h`` is cut to an ``r`` interval by exact rational bounds,
    so the cost is linear in ``h_max`` rather than in the box area.
    """
    out = []
    for h in range(h_max + 1):
        lo, hi = 0, r_max
        for c in region.constraints:
            rest = c.c - c.a * h
            if c.b > 0:
                hi = min(hi, math.floor(rest / c.b))
            elif c.b < 0:
                lo = max(lo, math.ceil(rest / c.b))
            elif rest < 0:
                hi = -1
        out.extend(SkeletalPoint(h, r) for r in range(lo, hi + 1))
    return out


def count_t_lattice(sigma: int, check: bool = True) -> int:
    """``(sigma+2)(sigma+3)/2``, optionally cross-checked by enumeration."""
    check_genus(sigma)
    n = (sigma + 2) * (sigma + 3) // 2
    if check:
        box = lattice_points(region_t(sigma), sigma + 1, 2 * sigma + 2)
        if len(box) != n:
            raise AssertionError(f"T({sigma}) has {len(box)} lattice points, formula gives {n}")
    return n


def s_count_formula(sigma: int) -> Fraction:
    k = k_sigma(sigma)
    if k % 2 == 0:
        return Fraction((k + 2) ** 2, 4)
    return Fraction((k + 1) * (k + 3), 4)


def s_lattice_points(sigma: int) -> list[SkeletalPoint]:
    if check_genus(sigma) < 6:
        raise ValueError(f"S region is only used for genus >= 6, got {sigma}")
    k = k_sigma(sigma)
    out = []
    h = 0
    while True:
        top = sigma + 2 - 4 * h
        bottom = max(0, sigma + 2 - k - 2 * h)
        if top < bottom:
            break
        out.extend(SkeletalPoint(h, r) for r in range(bottom, top + 1))
        h += 1
    return out


def rightmost_point(sigma: int) -> SkeletalPoint:
    check_genus(sigma)
    if sigma % 2 == 0:
        return SkeletalPoint(sigma // 2, 2)
    return SkeletalPoint((sigma + 1) // 2, 0)
