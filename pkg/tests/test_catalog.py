from __future__ import annotations

import random

import numpy as np
import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from skelsig.catalog import (
    CatalogError,
    _family_entries,
    families_cover,
    load_catalog,
    parse_catalog,
)
from skelsig.extensions import KNOWN_COUNTS, classify_orders, is_group_table
from skelsig.isomorphism import are_isomorphic, automorphisms, find_isomorphism
from skelsig import families


def test_counts_match_known_classification(catalog):
    for n in range(1, 33):
        listing = catalog.groups_of_order(n)
        assert listing.complete
        assert len(listing.groups) == KNOWN_COUNTS[n], n


def test_spec_orders(catalog):
    assert catalog.names_of_order(11) == ["C11"]
    assert sorted(catalog.names_of_order(12)) == sorted(["C12", "C6xC2", "D6", "Q12", "A4"])
    assert len(catalog.groups_of_order(20).groups) == 5
    assert catalog.groups_of_order(20).complete


def test_partial_and_uncovered_orders(catalog):
    listing = catalog.groups_of_order(48)
    assert not listing.complete and listing.groups
    assert not catalog.groups_of_order(148).complete
    assert catalog.groups_of_order(1000).groups == []
    assert catalog.groups_of_order(37).complete


def test_validate_deep(catalog):
    assert catalog.validate(deep=True) == []


def test_sympy_oracle_invariants(catalog):
    # order, abelian flag, centre and derived subgroup from an independent library
    for entry in catalog:
        G = catalog.group(entry.name)
        gens = [Permutation(list(G.perm(G.handle(p)))) for p in G.generators] or [Permutation(list(range(G.degree)))]
        S = PermutationGroup(gens)
        assert S.order() == G.order == entry.order, entry.name
        assert S.is_abelian == G.is_abelian, entry.name
        assert S.center().order() == G.center.order, entry.name
        assert S.derived_subgroup().order() == G.derived_subgroup.order, entry.name


def test_records_pairwise_non_isomorphic(catalog):
    for n in (8, 12, 16, 18, 20, 24):
        gs = catalog.groups_of_order(n).groups
        for i in range(len(gs)):
            for j in range(i + 1, len(gs)):
                assert not are_isomorphic(gs[i].table, gs[j].table), (gs[i].name, gs[j].name)


def test_coarse_collisions_are_marked(catalog):
    for n in range(1, 33):
        seen = {}
        for e in catalog.entries_of_order(n):
            fp = catalog.group(e.name).fingerprint
            if fp in seen:
                assert e.split == "fine" and seen[fp].split == "fine"
            seen[fp] = e


def test_lagrange_everywhere(catalog):
    for n in range(1, 33):
        for G in catalog.groups_of_order(n).groups:
            if G.order <= 32:
                assert all(n % s.order == 0 for s in G.subgroup_lattice())


def test_closure_sampled(catalog):
    rng = random.Random(1)
    for n in range(1, 65):
        for G in catalog.groups_of_order(n).groups:
            assert is_group_table(G.table) if G.order <= 24 else True
            t = G.table
            for _ in range(1000):
                a, b, c = (rng.randrange(G.order) for _ in range(3))
                assert t[t[a, b], c] == t[a, t[b, c]]


def test_families_cover_rule_against_known_counts():
    for n in range(2, 33):
        if families_cover(n):
            assert len(_family_entries(n)) == KNOWN_COUNTS[n], n


def test_family_orders_beyond_table(catalog):
    for n in (44, 76, 121, 254):
        listing = catalog.groups_of_order(n)
        assert listing.complete
        assert all(G.order == n for G in listing.groups)


def test_regenerating_small_orders_matches_table(catalog):
    reps = classify_orders(12)
    for n in range(1, 13):
        assert len(reps[n]) == KNOWN_COUNTS[n]
        shipped = [G.table for G in catalog.groups_of_order(n).groups]
        for t in reps[n]:
            assert sum(find_isomorphism(t, s) is not None for s in shipped) == 1


def test_automorphism_counts():
    assert len(automorphisms(families.abelian_product(2, 2).table)) == 6
    assert len(automorphisms(families.generalized_quaternion(2).table)) == 24
    assert len(automorphisms(families.dihedral(4).table)) == 8
    assert len(automorphisms(families.cyclic(7).table)) == 6


def test_parse_errors():
    with pytest.raises(CatalogError):
        parse_catalog("C2 2 2 - (1,2)\n")
    with pytest.raises(CatalogError):
        parse_catalog("format skelsig-catalog 1\nC2 2 2 - (1,2\n")
    with pytest.raises(CatalogError):
        parse_catalog("format skelsig-catalog 1\nC2 2 2 - (1,2)\nC2 2 2 - (1,2)\n")


def test_load_rejects_wrong_declared_order(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("format skelsig-catalog 1\ncomplete 3\nC3 3 3 - (1,2,3)\nX4 4 4 - (1,2)\n")
    with pytest.raises(CatalogError):
        load_catalog(f)
    f.write_text("format skelsig-catalog 1\ncomplete 4\nC4 4 4 - (1,2,3,4)\n")
    with pytest.raises(CatalogError, match="classes exist"):
        load_catalog(f)


def test_catalog_is_table_driven(tmp_path, catalog):
    f = tmp_path / "tiny.txt"
    f.write_text("format skelsig-catalog 1\ncomplete 1-3\nC1 1 1 - ()\nC2 2 2 - (1,2)\nC3 3 3 - (1,2,3)\n")
    tiny = load_catalog(f)
    assert tiny.is_complete(3) and tiny.is_complete(4) and not tiny.is_complete(8)
    assert np.array_equal(tiny.group("C3").table, catalog.group("C3").table)
