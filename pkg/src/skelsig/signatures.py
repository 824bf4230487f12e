"""Signatures, skeletal points and the Riemann-Hurwitz relation.

A signature ``(h; [n1,t1], ..., [ns,ts])`` records the quotient genus and
``t_j`` branch points of order ``n_j``.  Genus arithmetic is exact
(:class:`fractions.Fraction`) throughout, since integrality is the
question being asked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple


class SignatureError(ValueError):
    pass


class SkeletalPoint(NamedTuple):
    h: int
    r: int

    def __str__(self):
        return f"({self.h},{self.r})"


def check_genus(genus: int) -> int:
    if int(genus) != genus or genus < 2:
        raise SignatureError(f"genus must be an integer >= 2, got {genus}")
    return int(genus)


@dataclass(frozen=True, order=True)
class Signature:
    """Quotient genus plus branch orders, stored as sorted ``(order, count)`` pairs."""

    h: int
    brackets: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.h < 0:
            raise SignatureError(f"quotient genus must be >= 0, got {self.h}")
        merged: dict[int, int] = {}
        for n, t in self.brackets:
            if n < 2:
                raise SignatureError(f"branch orders must be >= 2, got {n}")
            if t < 0:
                raise SignatureError(f"counts must be >= 0, got {t}")
            if t:
                merged[n] = merged.get(n, 0) + t
        object.__setattr__(self, "brackets", tuple(sorted(merged.items())))

    @classmethod
    def from_periods(cls, h: int, periods: Iterable[int]) -> "Signature":
        return cls(h, tuple((n, 1) for n in periods))

    @property
    def periods(self) -> tuple[int, ...]:
        """Expanded branch orders, ascending."""
        return tuple(n for n, t in self.brackets for _ in range(t))

    @property
    def r(self) -> int:
        return sum(t for _, t in self.brackets)

    def count(self, n: int) -> int:
        return dict(self.brackets).get(n, 0)

    def __str__(self):
        if not self.brackets:
            return f"({self.h}; -)"
        return f"({self.h}; " + " ".join(f"[{n},{t}]" for n, t in self.brackets) + ")"


def skeletal(sig: Signature) -> SkeletalPoint:
    return SkeletalPoint(sig.h, sig.r)


_SIG_RE = re.compile(r"^\(\s*(\d+)\s*;(.*)\)$", re.S)
_BRACKET_RE = re.compile(r"\[\s*(\d+)\s*,\s*(\d+)\s*\]")


def parse_signature(text: str) -> Signature:
    """Parse ``(h; [n,t] ...)``, ``(h; -)`` or the expanded ``(h; n1, n2, ...)``."""
    m = _SIG_RE.match(text.strip())
    if not m:
        raise SignatureError(f"not a signature: {text!r}")
    h = int(m.group(1))
    rest = m.group(2).strip()
    if rest in ("", "-"):
        return Signature(h)
    if "[" in rest:
        if _BRACKET_RE.sub("", rest).replace(",", "").strip():
            raise SignatureError(f"not a signature: {text!r}")
        return Signature(h, tuple((int(n), int(t)) for n, t in _BRACKET_RE.findall(rest)))
    try:
        periods = [int(p) for p in re.split(r"[,\s]+", rest) if p]
    except ValueError:
        raise SignatureError(f"not a signature: {text!r}") from None
    return Signature.from_periods(h, periods)


# -- Riemann-Hurwitz -----------------------------------------------------------


def rh_genus(order: int, sig: Signature) -> Fraction:
    """``1 + |G|(h-1) + |G|/2 * sum t_j (1 - 1/n_j)``, exactly."""
    if order < 1:
        raise SignatureError(f"group order must be positive, got {order}")
    branch = sum((t * (1 - Fraction(1, n)) for n, t in sig.brackets), Fraction(0))
    return 1 + order * (sig.h - 1) + Fraction(order, 2) * branch


def rh_satisfied(order: int, sig: Signature, genus: int) -> bool:
    return rh_genus(order, sig) == genus


def _divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def enumerate_signatures(
    order: int,
    genus: int,
    h_range: Iterable[int] | None = None,
    periods: Iterable[int] | None = None,
    r: int | None = None,
    divisors_only: bool = False,
) -> Iterator[Signature]:
    """All signatures over the allowed branch orders satisfying RH for ``genus``.

    Without ``periods`` the branch orders range over ``2..4*genus+2``;
    ``divisors_only`` further restricts them to divisors of ``order``.
    Output is ordered by ``(h, r, expanded periods)``.
    """
    if order < 2:
        raise SignatureError("enumeration needs order >= 2")
    genus = check_genus(genus)
    top = 4 * genus + 2
    allowed = sorted(set(periods)) if periods is not None else list(range(2, top + 1))
    allowed = [n for n in allowed if 2 <= n]
    if divisors_only:
        allowed = [n for n in allowed if order % n == 0]
    h_max = 1 + (genus - 1) // order
    hs = sorted(set(h_range)) if h_range is not None else range(0, genus + 1)
    weights = [1 - Fraction(1, n) for n in allowed]

    for h in hs:
        if h < 0 or h > h_max:
            continue
        # sum t_j (1 - 1/n_j) must equal this
        target = Fraction(2 * (genus - 1) - 2 * order * (h - 1), order)
        if target < 0:
            continue
        r_max = min(2 * genus + 2, int(2 * target))
        rs = [r] if r is not None else range(0, r_max + 1)
        for k in rs:
            if k < 0 or k > r_max:
                continue
            for counts in _fill(weights, 0, target, k):
                yield Signature(h, tuple((allowed[i], c) for i, c in counts))


def _fill(weights, i, rem, k):
    """Count vectors over ``weights[i:]`` with ``k`` terms summing to ``rem``.

    Larger counts of smaller orders come first, which makes expanded period
    tuples come out in lexicographic order.
    """
    if k == 0:
        if rem == 0:
            yield ()
        return
    if i >= len(weights):
        return
    lo, hi = weights[i], weights[-1]
    # each remaining term lies in [lo, hi]
    if rem < k * lo or rem > k * hi:
        return
    nxt = weights[i + 1] if i + 1 < len(weights) else None
    for c in range(k, -1, -1):
        left = rem - c * lo
        if left < 0:
            continue
        if c < k and (nxt is None or left < (k - c) * nxt):
            # fewer of this order only makes the remainder harder to reach
            break
        for rest in _fill(weights, i + 1, left, k - c):
            yield (((i, c),) if c else ()) + rest
