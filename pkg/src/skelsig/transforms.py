"""The moves ``H1`` and ``E12`` on C4 signatures ``(h; [2,t1], [4,t2])``.

``H1`` trades four order-2 branch points for one unit of quotient genus,
``E12`` trades three order-2 points for two order-4 points.  Both keep
the Riemann-Hurwitz genus for ``|G| = 4``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .signatures import Signature, SkeletalPoint


class PreconditionFailed(ValueError):
    pass


class BadShape(ValueError):
    pass


@dataclass(frozen=True, order=True)
class C4Signature:
    h: int
    t1: int
    t2: int

    def __post_init__(self):
        if min(self.h, self.t1, self.t2) < 0:
            raise ValueError(f"negative entry in {self}")

    def signature(self) -> Signature:
        return Signature(self.h, ((2, self.t1), (4, self.t2)))

    @classmethod
    def from_signature(cls, sig: Signature) -> "C4Signature":
        bad = [n for n, _ in sig.brackets if n not in (2, 4)]
        if bad:
            raise BadShape(f"{sig} has branch orders outside {{2, 4}}: {bad}")
        return cls(sig.h, sig.count(2), sig.count(4))

    @property
    def skeletal(self) -> SkeletalPoint:
        return SkeletalPoint(self.h, self.t1 + self.t2)

    def __str__(self):
        return f"({self.h}; [2,{self.t1}] [4,{self.t2}])"


def h1(sig: C4Signature) -> C4Signature:
    if sig.t1 < 4:
        raise PreconditionFailed(f"H1 needs at least 4 order-2 points, {sig} has {sig.t1}")
    return C4Signature(sig.h + 1, sig.t1 - 4, sig.t2)


def e12(sig: C4Signature) -> C4Signature:
    if sig.t1 < 3:
        raise PreconditionFailed(f"E12 needs at least 3 order-2 points, {sig} has {sig.t1}")
    return C4Signature(sig.h, sig.t1 - 3, sig.t2 + 2)


def skeletal_h1(p) -> SkeletalPoint:
    h, r = p
    if r < 4:
        raise PreconditionFailed(f"H1 would leave {r - 4} branch points at {p}")
    return SkeletalPoint(h + 1, r - 4)


def skeletal_e12(p) -> SkeletalPoint:
    h, r = p
    if r < 1:
        raise PreconditionFailed(f"E12 would leave {r - 1} branch points at {p}")
    return SkeletalPoint(h, r - 1)
