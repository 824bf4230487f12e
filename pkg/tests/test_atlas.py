from __future__ import annotations

import json
from fractions import Fraction

import pytest

from skelsig.atlas import (
    CONJECTURES,
    CacheError,
    KAtlas,
    Status,
    build_atlas,
    c4_signatures,
    c4_sweep,
    cache_file,
    cached_atlas,
    load_atlas,
    lower_bound_actions,
    nearest,
    save_atlas,
    scan_conjectures,
)
from skelsig.regions import region_t, s_lattice_points
from skelsig.signatures import parse_signature, rh_genus
from skelsig.transforms import C4Signature


def test_genus_2_points(atlases):
    a = atlases(2)
    assert a.point_set == {(0, 3), (0, 4), (0, 5), (0, 6), (1, 2)}
    assert a.check_invariants(reverify=True) == []
    assert (1, 1) in a.absent and (0, 0) in a.absent


def test_genus_2_witness_examples(atlases):
    a = atlases(2)
    assert any(w.group_name == "C2" and w.signature == parse_signature("(1;[2,2])") for w in a.witnesses((1, 2)))
    assert any(w.group_name == "C2" for w in a.witnesses((0, 6)))
    assert any(w.group_name == "C5" and w.signature == parse_signature("(0;[5,3])") for w in a.witnesses((0, 3)))


def test_trivial_group_not_counted(atlases):
    # the identity action would put (2,0) into genus 2; only N >= 2 counts
    assert (2, 0) not in atlases(2)
    assert (2, 0) not in region_t(2)


def test_genus_3_free_action(atlases):
    ws = atlases(3).witnesses((2, 0))
    assert any(w.group_name == "C2" and w.signature.r == 0 for w in ws)


def test_genus_6_sporadic_absent(atlases):
    a = atlases(6)
    assert (1, 1) not in a
    assert a.is_absent((1, 1))


@pytest.mark.parametrize("genus", range(2, 9))
def test_invariants(genus, atlases):
    a = atlases(genus)
    assert a.check_invariants(reverify=True) == []
    assert a.point_set.isdisjoint(a.absent)
    assert a.point_set.isdisjoint(p for p, _ in a.unknown)


def test_c4_sweep_examples():
    sweep = c4_sweep(12)
    assert set(s_lattice_points(12)) <= set(sweep)
    assert (0, 14) in sweep
    assert C4Signature(0, 12, 2) in c4_signatures(12)
    sweep6 = c4_sweep(6)
    assert (0, 8) in sweep6
    assert rh_genus(4, C4Signature(0, 6, 2).signature()) == 6
    for p, w in sweep6.items():
        assert w.group_name == "C4" and w.skeletal == p and w.verify()


def test_c4_sweep_contained_in_atlas(atlases):
    for genus in range(6, 9):
        assert set(c4_sweep(genus)) <= atlases(genus).point_set


@pytest.mark.parametrize("genus, bound, count", [(12, Fraction(35, 4), 9), (9, 6, 6), (6, Fraction(15, 4), 4)])
def test_lower_bound(genus, bound, count):
    assert lower_bound_actions(genus) == (bound, count)


def test_lower_bound_precondition():
    with pytest.raises(ValueError):
        lower_bound_actions(5)


def test_json_roundtrip(atlases):
    a = atlases(4)
    text = json.dumps(a.to_json(), sort_keys=True)
    back = KAtlas.from_json(json.loads(text))
    assert back == a
    assert json.dumps(back.to_json(), sort_keys=True) == text
    assert [w.checksum for _, ws in back.points for w in ws] == [w.checksum for _, ws in a.points for w in ws]


def test_cache_roundtrip_reverifies(tmp_path, atlases, catalog):
    a = atlases(3)
    f = cache_file(3, tmp_path)
    save_atlas(a, f)
    assert load_atlas(f, catalog) == a
    data = json.loads(f.read_text())
    data["points"][0]["witnesses"][0]["signature"] = "(0;[2,7])"
    f.write_text(json.dumps(data))
    with pytest.raises(CacheError):
        load_atlas(f, catalog)
    data["schema_version"] = 99
    f.write_text(json.dumps(data))
    with pytest.raises(CacheError):
        load_atlas(f, catalog)


def test_cached_atlas_uses_env(tmp_path, monkeypatch, atlases, catalog):
    monkeypatch.setenv("SKELSIG_CACHE_DIR", str(tmp_path))
    a = cached_atlas(2, catalog)
    assert a == atlases(2)
    assert cache_file(2, tmp_path).exists()
    assert cached_atlas(2, catalog) == a
    cache_file(2, tmp_path).write_text("not json")
    assert cached_atlas(2, catalog) == a


def test_parallel_build_is_identical(atlases, catalog):
    a = build_atlas(5, catalog, jobs=2)
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(atlases(5).to_json(), sort_keys=True)


def test_small_max_order_is_unknown_not_absent(catalog):
    a = build_atlas(6, catalog, max_order=8)
    assert not a.complete
    assert not a.absent
    assert a.unknown_reason((1, 1)) == "orders above 8 not searched"
    assert a.check_invariants() == []


def test_nearest():
    assert nearest(Fraction(2)) == (2,)
    assert nearest(Fraction(7, 3)) == (2,)
    assert nearest(Fraction(8, 3)) == (3,)
    assert nearest(Fraction(5, 2)) == (2, 3)
    # 2g/3 - c never lands on a half, so the tie branch is never used by the scan
    assert all(len(nearest(Fraction(2 * g, 3) - c)) == 1 for g in range(2, 200) for c in (4, 6, 7, 8))


def _report(reports, cid):
    return next(r for r in reports if r.conjecture == cid)


def test_conjecture_examples(atlases):
    reports = scan_conjectures([atlases(g) for g in range(6, 10)])
    assert [r.conjecture for r in reports] == [c[0] for c in CONJECTURES]
    h0 = _report(reports, "h0-line")
    assert {e.point.r for e in h0.entries if e.genus == 6 and e.status == Status.WITNESSED} == set(range(4, 9))
    gap = _report(reports, "triangular-gap")
    assert gap.violations == []
    assert all(e.point not in atlases(e.genus) for e in gap.entries)
    h2 = _report(reports, "h2-line")
    at9 = [e for e in h2.entries if e.genus == 9 and e.claim == "missing"]
    assert [e.point for e in at9] == [(2, 2)]
    assert at9[0].status in (Status.WITNESSED, Status.UNKNOWN, Status.VIOLATION)
    for r in reports:
        assert r.violations == []


def test_scan_flags_planted_witness(atlases):
    # move a real witness onto a claimed-missing point: the scan must call it out
    a = atlases(9)
    fake = KAtlas(9, a.points + (((2, 2), a.witnesses((0, 20))),), a.absent, a.unknown, a.scope, a.complete)
    assert fake.check_invariants()  # the witness belongs elsewhere
    h2 = _report(scan_conjectures([fake]), "h2-line")
    assert [e.point for e in h2.violations] == [(2, 2)]


def test_first_witnessed(atlases):
    h1 = _report(scan_conjectures([atlases(g) for g in (6, 7)]), "h1-line")
    first = h1.first_witnessed()
    assert first[(1, 3)] == 6
    assert first[(1, 6)] == 7


def test_scan_needs_atlases():
    with pytest.raises(ValueError):
        scan_conjectures([])
