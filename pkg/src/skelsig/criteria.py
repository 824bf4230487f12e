"""Closed-form criteria and explicit constructions of group actions.

Each construction returns an :class:`ActionWitness`: a group, a signature
satisfying Riemann-Hurwitz for the requested genus, and a generating vector
that has been checked.  Apart from the quaternion family, whose vectors are
written down directly, vectors come from the generic search in
:mod:`skelsig.genvec`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

from . import families
from .genvec import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    GeneratingVector,
    exists_generating_vector,
    verify_generating_vector,
)
from .groups import FiniteGroup
from .signatures import Signature, SkeletalPoint, check_genus, enumerate_signatures, parse_signature, rh_genus, rh_satisfied
from .transforms import BadShape, C4Signature

__all__ = [
    "ActionWitness",
    "BadShape",
    "C3Line",
    "FreeCyclic",
    "HyperellipticLine",
    "OutOfRange",
    "Quaternion",
    "SporadicOutcome",
    "TwoBranch",
    "VPoint",
    "all_constructions",
    "construct_witness",
    "harvey_c4",
    "quaternion_higher_genus",
    "resolve_group",
    "sporadic_11_excluded",
]


class OutOfRange(ValueError):
    pass


class WitnessError(ValueError):
    pass


def _as_c4(sig: Signature | C4Signature) -> C4Signature:
    return C4Signature.from_signature(sig) if isinstance(sig, Signature) else sig


def harvey_c4(sig: Signature | C4Signature) -> bool:
    """Whether ``C4`` acts with signature ``(h; [2,t1], [4,t2])``.

    Harvey's conditions for ``C4``: ``t2`` even, ``t2 > 0`` when ``h = 0``,
    and, when there are no order-4 points, an even number of order-2 points
    (the branch involutions all equal ``g^2`` and must multiply to ``e``).
    """
    sig = _as_c4(sig)
    if sig.t2 % 2:
        return False
    if sig.t2 == 0:
        return sig.h != 0 and sig.t1 % 2 == 0
    return True


def harvey_c4_literal(sig: Signature | C4Signature) -> bool:
    """The two-clause form (``t2`` even, and ``t2 > 0`` if ``h = 0``) without the ``t2 = 0`` parity clause.

    Kept for comparison: it accepts ``(h; [2,t1])`` with ``t1`` odd, which
    no ``C4`` vector realizes.
    """
    sig = _as_c4(sig)
    if sig.t2 % 2:
        return False
    return sig.h != 0 or sig.t2 > 0


# -- witnesses ---------------------------------------------------------------------


def resolve_group(name: str, checksum: str | None = None, catalog=None) -> FiniteGroup:
    """Rebuild a group by name, preferring the realization whose checksum matches."""
    candidates = []
    if catalog is not None:
        try:
            candidates.append(catalog.group(name))
        except ValueError:
            pass
    fam = families.family_from_name(name)
    if fam is not None:
        candidates.append(fam)
    for g in candidates:
        if checksum is None or g.checksum == checksum:
            return g
    raise WitnessError(f"no group named {name!r} with checksum {checksum}")


@dataclass(frozen=True)
class ActionWitness:
    genus: int
    group_name: str
    order: int
    signature: Signature
    vector: GeneratingVector | None
    checksum: str
    source: str = ""
    group: FiniteGroup | None = field(default=None, compare=False, repr=False)

    @classmethod
    def build(cls, genus: int, G: FiniteGroup, sig: Signature, vector: GeneratingVector | None, source: str = "") -> "ActionWitness":
        return cls(genus, G.name, G.order, sig, vector, G.checksum, source, G)

    @property
    def skeletal(self) -> SkeletalPoint:
        return SkeletalPoint(self.signature.h, self.signature.r)

    def resolve(self, catalog=None) -> FiniteGroup:
        if self.group is not None and self.group.checksum == self.checksum:
            return self.group
        return resolve_group(self.group_name, self.checksum, catalog)

    def verify(self, catalog=None) -> bool:
        """Riemann-Hurwitz plus the vector (or Harvey's test for a bare C4 claim)."""
        if not rh_satisfied(self.order, self.signature, self.genus):
            return False
        if self.vector is None:
            return self.order == 4 and self.group_name == "C4" and harvey_c4(self.signature)
        G = self.resolve(catalog)
        return G.order == self.order and verify_generating_vector(G, self.signature, self.vector)

    def sort_key(self):
        return (self.order, self.group_name, self.signature, self.source)

    def to_json(self) -> dict:
        out = {
            "genus": self.genus,
            "group": self.group_name,
            "order": self.order,
            "signature": str(self.signature),
            "checksum": self.checksum,
            "source": self.source,
        }
        if self.vector is not None:
            out["vector"] = self.vector.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ActionWitness":
        vec = GeneratingVector.from_json(data["vector"]) if "vector" in data else None
        return cls(
            data["genus"],
            data["group"],
            data["order"],
            parse_signature(data["signature"]),
            vec,
            data["checksum"],
            data.get("source", ""),
        )


def search_witness(genus: int, G: FiniteGroup, sig: Signature, source: str, budget: int = DEFAULT_BUDGET) -> ActionWitness | None:
    if not rh_satisfied(G.order, sig, genus):
        raise OutOfRange(f"{sig} with |G|={G.order} does not give genus {genus}")
    res = exists_generating_vector(G, sig, budget=budget)
    if res.witness is None:
        return None
    return ActionWitness.build(genus, G, sig, res.witness, source)


# -- constructions ------------------------------------------------------------------


@dataclass(frozen=True)
class HyperellipticLine:
    h0: int


@dataclass(frozen=True)
class C3Line:
    h0: int


@dataclass(frozen=True)
class VPoint:
    pass


@dataclass(frozen=True)
class TwoBranch:
    pass


@dataclass(frozen=True)
class FreeCyclic:
    h0: int


@dataclass(frozen=True)
class Quaternion:
    h0: int
    n: int


ConstructionKind = Union[HyperellipticLine, C3Line, VPoint, TwoBranch, FreeCyclic, Quaternion]


def _plan(kind: ConstructionKind, sigma: int) -> tuple[FiniteGroup, Signature, str]:
    """Group and signature for a construction, or OutOfRange."""
    if isinstance(kind, HyperellipticLine):
        r = 2 * sigma + 2 - 4 * kind.h0
        if kind.h0 < 0 or r < 0:
            raise OutOfRange(f"hyperelliptic line at h0={kind.h0} leaves r={r} for genus {sigma}")
        return families.cyclic(2), Signature(kind.h0, ((2, r),)), "hyperelliptic-line"
    if isinstance(kind, C3Line):
        r = sigma + 2 - 3 * kind.h0
        if kind.h0 < 0 or r < 0:
            raise OutOfRange(f"C3 line at h0={kind.h0} leaves r={r} for genus {sigma}")
        if r == 1:
            raise OutOfRange(f"C3 is abelian, so no action with a single branch point (genus {sigma})")
        return families.cyclic(3), Signature(kind.h0, ((3, r),)), "c3-line"
    if isinstance(kind, VPoint):
        return families.abelian_product(2, 2), Signature(0, ((2, sigma + 3),)), "v-point"
    if isinstance(kind, TwoBranch):
        return families.cyclic(sigma), Signature(1, ((sigma, 2),)), "two-branch"
    if isinstance(kind, FreeCyclic):
        if kind.h0 < 2:
            raise OutOfRange(f"free actions need quotient genus >= 2, got {kind.h0}")
        k, rem = divmod(sigma - 1, kind.h0 - 1)
        if rem or k < 2:
            raise OutOfRange(f"(genus-1)/(h0-1) = {sigma - 1}/{kind.h0 - 1} is not an integer >= 2")
        return families.cyclic(k), Signature(kind.h0), "free-cyclic"
    if isinstance(kind, Quaternion):
        if kind.h0 < 1 or kind.n < 2:
            raise OutOfRange(f"quaternion construction needs h0 >= 1 and n >= 2, got {kind}")
        expected = 4 * kind.n * (kind.h0 - 1) + 2 * kind.n - 1
        if expected != sigma:
            raise OutOfRange(f"{kind} lives in genus {expected}, not {sigma}")
        return families.generalized_quaternion(kind.n), Signature(kind.h0, ((kind.n, 1),)), "quaternion"
    raise TypeError(f"unknown construction {kind!r}")


def _quaternion_vector(G: FiniteGroup, h0: int) -> GeneratingVector:
    # (x, y, e, ..., e, y x^-2 y^-1)
    x, y = G.named("x"), G.named("y")
    c = G.product((y, G.inv(G.power(x, 2)), G.inv(y)))
    return GeneratingVector(((x, y),) + ((0, 0),) * (h0 - 1), (c,))


def construct_witness(kind: ConstructionKind, genus: int, budget: int = DEFAULT_BUDGET) -> ActionWitness:
    sigma = check_genus(genus)
    G, sig, source = _plan(kind, sigma)
    if not rh_satisfied(G.order, sig, sigma):
        raise AssertionError(f"{kind}: RH gives {rh_genus(G.order, sig)}, expected {sigma}")
    if isinstance(kind, Quaternion):
        w = ActionWitness.build(sigma, G, sig, _quaternion_vector(G, kind.h0), source)
    else:
        w = search_witness(sigma, G, sig, source, budget)
        if w is None:
            raise AssertionError(f"{kind} at genus {sigma}: no generating vector for {G.name} {sig}")
    if not w.verify():
        raise AssertionError(f"{kind} at genus {sigma}: witness fails verification")
    return w


def quaternion_higher_genus(h0: int, n: int) -> ActionWitness:
    if h0 < 2 or n < 2:
        raise OutOfRange(f"needs h0 >= 2 and n >= 2, got h0={h0}, n={n}")
    return construct_witness(Quaternion(h0, n), 4 * n * (h0 - 1) + 2 * n - 1)


def all_constructions(sigma: int) -> list[ConstructionKind]:
    """Every construction that applies in genus ``sigma``."""
    check_genus(sigma)
    kinds: list[ConstructionKind] = [HyperellipticLine(h) for h in range((2 * sigma + 2) // 4 + 1)]
    kinds += [C3Line(h) for h in range((sigma + 2) // 3 + 1) if sigma + 2 - 3 * h != 1]
    kinds += [VPoint(), TwoBranch()]
    kinds += [FreeCyclic(h) for h in range(2, sigma + 1) if (sigma - 1) % (h - 1) == 0 and (sigma - 1) // (h - 1) >= 2]
    for h0 in range(1, sigma + 1):
        n, rem = divmod(sigma + 1, 4 * (h0 - 1) + 2)
        if not rem and n >= 2 and 4 * n <= 1024:
            kinds.append(Quaternion(h0, n))
    return kinds


# -- (1,1) in genus p+1 -------------------------------------------------------------


class SporadicStatus(enum.Enum):
    CONFIRMED_ABSENT = "ConfirmedAbsent"
    INCONCLUSIVE = "Inconclusive"
    REALIZED = "Realized"


@dataclass(frozen=True)
class SporadicOutcome:
    status: SporadicStatus
    reason: str = ""
    cases: tuple[tuple[int, Signature], ...] = ()
    witness: ActionWitness | None = None


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def sporadic_11_excluded(p: int, catalog, budget: int = DEFAULT_BUDGET) -> SporadicOutcome:
    """Search every group that could put ``(1,1)`` in genus ``p+1``.

    The candidate ``(|G|, signature)`` pairs come from Riemann-Hurwitz over
    all orders up to the Hurwitz bound; only complete catalog orders allow
    a definite answer.
    """
    if not _is_prime(p) or p < 5:
        raise ValueError(f"p must be a prime >= 5, got {p}")
    sigma = p + 1
    cases = tuple(
        (N, sig)
        for N in range(2, 84 * (sigma - 1) + 1)
        for sig in enumerate_signatures(N, sigma, h_range=[1], r=1, divisors_only=True)
    )
    missing = [N for N, _ in cases if not catalog.is_complete(N)]
    if missing:
        return SporadicOutcome(
            SporadicStatus.INCONCLUSIVE, f"orders {sorted(set(missing))} are not complete in the catalog", cases
        )
    for N, sig in cases:
        for G in catalog.groups_of_order(N).groups:
            try:
                w = search_witness(sigma, G, sig, "sporadic-check", budget)
            except BudgetExceeded as exc:
                return SporadicOutcome(SporadicStatus.INCONCLUSIVE, f"{G.name} {sig}: {exc}", cases)
            if w is not None:
                return SporadicOutcome(SporadicStatus.REALIZED, f"{G.name} {sig}", cases, w)
    return SporadicOutcome(SporadicStatus.CONFIRMED_ABSENT, "", cases)
