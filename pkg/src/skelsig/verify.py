"""Self-check suites behind ``skelsig verify``.

Each suite returns a :class:`VerifyReport` listing every failed check, so a
caller can print it and turn it into an exit code.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import families, regions
from .catalog import Catalog, default_catalog
from .criteria import (
    Quaternion,
    SporadicStatus,
    construct_witness,
    harvey_c4,
    quaternion_higher_genus,
    sporadic_11_excluded,
)
from .genvec import DEFAULT_BUDGET, exists_generating_vector
from .signatures import rh_genus
from .transforms import C4Signature, e12, h1, skeletal_e12, skeletal_h1


@dataclass
class VerifyReport:
    target: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, message: str) -> None:
        self.checks += 1
        if not cond:
            self.failures.append(message)

    def to_json(self) -> dict:
        return {"target": self.target, "checks": self.checks, "ok": self.ok, "failures": self.failures, "notes": self.notes}


def verify_counts(max_genus: int = 200) -> VerifyReport:
    rep = VerifyReport("counts")
    for s in range(2, max_genus + 1):
        n = len(regions.t_lattice_points(s))
        rep.check(n == (s + 2) * (s + 3) // 2 == regions.count_t_lattice(s, check=False), f"T({s}) has {n} points")
        if s >= 6:
            m = len(regions.s_lattice_points(s))
            rep.check(m == regions.s_count_formula(s), f"S({s}) has {m} points, formula {regions.s_count_formula(s)}")
    return rep


def verify_regions(max_genus: int = 40, seed: int = 0) -> VerifyReport:
    rep = VerifyReport("regions")
    rng = random.Random(seed)
    for s in range(2, max_genus + 1):
        T, L2 = regions.region_t(s), regions.region_l(s, 2)
        window = [(h, r) for h in range(3 * s + 1) for r in range(3 * s + 1)]
        rep.check(all(regions.contains(T, p) == regions.contains(L2, p) for p in window), f"L({s},2) != T({s})")
        n, m = sorted(rng.sample(range(2, 84 * (s - 1) + 1), 2))
        Ln, Lm = regions.region_l(s, n), regions.region_l(s, m)
        rep.check(
            all(regions.contains(Ln, p) for p in window if regions.contains(Lm, p)),
            f"L({s},{m}) not inside L({s},{n})",
        )
        if s >= 6:
            S = regions.region_s(s)
            rep.check(all(regions.contains(T, p) for p in regions.s_lattice_points(s)), f"S({s}) not inside T({s})")
            rep.check(
                regions.s_lattice_points(s) == regions.lattice_points(S, s, 2 * s + 2),
                f"S({s}) enumeration disagrees with its half-planes",
            )
    return rep


def verify_transforms(h_max: int = 10, t1_max: int = 40, t2_max: int = 20) -> VerifyReport:
    rep = VerifyReport("transforms")
    for h in range(h_max + 1):
        for t1 in range(t1_max + 1):
            for t2 in range(t2_max + 1):
                sig = C4Signature(h, t1, t2)
                genus = rh_genus(4, sig.signature())
                for name, move, proj, need in (("H1", h1, skeletal_h1, 4), ("E12", e12, skeletal_e12, 3)):
                    if t1 < need:
                        continue
                    img = move(sig)
                    rep.check(rh_genus(4, img.signature()) == genus, f"{name} changes the genus of {sig}")
                    rep.check(not harvey_c4(sig) or harvey_c4(img), f"{name} breaks Harvey validity of {sig}")
                    rep.check(img.skeletal == proj(sig.skeletal), f"{name} does not commute with projection at {sig}")
    return rep


def verify_harvey(max_genus: int = 40, budget: int = DEFAULT_BUDGET) -> VerifyReport:
    rep = VerifyReport("harvey")
    C4 = families.cyclic(4)
    for h in range(4):
        for t1 in range(13):
            for t2 in range(9):
                sig = C4Signature(h, t1, t2)
                g = rh_genus(4, sig.signature())
                if g.denominator != 1 or not 2 <= g <= max_genus:
                    continue
                found = exists_generating_vector(C4, sig.signature(), budget=budget).found
                rep.check(found == harvey_c4(sig), f"{sig}: Harvey says {harvey_c4(sig)}, search says {found}")
    return rep


def verify_quaternion() -> VerifyReport:
    rep = VerifyReport("quaternion")
    for n in range(2, 13):
        w = construct_witness(Quaternion(1, n), 2 * n - 1)
        rep.check(w.verify() and rh_genus(4 * n, w.signature) == 2 * n - 1, f"Q{4 * n} witness fails")
    for h0 in range(2, 5):
        for n in range(2, 7):
            w = quaternion_higher_genus(h0, n)
            rep.check(w.verify() and w.genus == 4 * n * (h0 - 1) + 2 * n - 1, f"Q{4 * n} at h0={h0} fails")
    return rep


def verify_sporadic(p: int = 5, catalog: Catalog | None = None, budget: int = DEFAULT_BUDGET) -> VerifyReport:
    rep = VerifyReport("sporadic")
    out = sporadic_11_excluded(p, catalog or default_catalog(), budget)
    cases = ", ".join(f"|G|={N} {sig}" for N, sig in out.cases)
    rep.notes.append(f"genus {p + 1}: (1,1) {out.status.value}; cases {cases}")
    rep.check(out.status is SporadicStatus.CONFIRMED_ABSENT, f"genus {p + 1}: {out.status.value} {out.reason}")
    return rep


TARGETS = ("regions", "transforms", "harvey", "quaternion", "sporadic", "counts")
