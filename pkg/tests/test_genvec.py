from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skelsig import families
from skelsig.genvec import (
    INVERSE_LAST,
    BudgetExceeded,
    GeneratingVector,
    Prefilter,
    ShapeMismatch,
    abelian_prefilter,
    brute_force_exists,
    exists_generating_vector,
    verify_generating_vector,
)
from skelsig.signatures import Signature, parse_signature as P


def small_groups(catalog, max_order=12):
    return [G for n in range(1, max_order + 1) for G in catalog.groups_of_order(n).groups]


def oracle_sample():
    for h in (0, 1):
        for r in range(5):
            for ps in itertools.combinations_with_replacement(range(2, 9), r):
                yield Signature.from_periods(h, ps)


def test_verify_examples():
    Q8 = families.generalized_quaternion(2)
    x, y = Q8.named("x"), Q8.named("y")
    c = Q8.product((y, Q8.inv(Q8.power(x, 2)), Q8.inv(y)))
    assert c == Q8.power(x, 2)
    assert verify_generating_vector(Q8, P("(1;[2,1])"), GeneratingVector(((x, y),), (c,)))
    C4 = families.cyclic(4)
    g = C4.named("x")
    assert verify_generating_vector(C4, P("(0;[4,4])"), GeneratingVector((), (g, g, g, g)))
    g2 = C4.power(g, 2)
    assert not verify_generating_vector(C4, P("(0;[2,2],[4,1])"), GeneratingVector((), (g2, g2, g)))


def test_verify_checks_each_condition():
    C4 = families.cyclic(4)
    g = C4.named("x")
    g2 = C4.power(g, 2)
    # product trivial and orders right, but <g^2> is not all of C4
    assert not verify_generating_vector(C4, P("(0;[2,2])"), GeneratingVector((), (g2, g2)))
    # wrong orders
    assert not verify_generating_vector(C4, P("(0;[4,2])"), GeneratingVector((), (g2, g2)))
    # orders may come in any arrangement
    assert verify_generating_vector(C4, P("(0;[2,1],[4,2])"), GeneratingVector((), (g, g2, g)))
    with pytest.raises(ShapeMismatch):
        verify_generating_vector(C4, P("(1;[4,2])"), GeneratingVector((), (g, g)))


def test_existence_examples():
    C2 = families.cyclic(2)
    res = exists_generating_vector(C2, P("(0;[2,6])"))
    assert res.witness == GeneratingVector((), (1,) * 6)
    res = exists_generating_vector(families.cyclic(4), P("(0;[2,2],[4,1])"))
    assert res.witness is None and res.exhaustive
    res = exists_generating_vector(families.cyclic(3), P("(1;[3,1])"))
    assert res.witness is None and res.exhaustive
    Q12 = families.generalized_quaternion(3)
    res = exists_generating_vector(Q12, P("(1;[3,1])"))
    assert res.found and verify_generating_vector(Q12, P("(1;[3,1])"), res.witness)


def test_odd_involution_count_independent_of_genus():
    res = exists_generating_vector(families.cyclic(2), P("(0;[2,5])"))
    assert res.witness is None and res.exhaustive


def test_period_not_an_element_order():
    res = exists_generating_vector(families.cyclic(6), P("(0;[4,3])"))
    assert res.witness is None and res.exhaustive and res.transitions == 0


def test_abelian_prefilter():
    assert abelian_prefilter(families.cyclic(3), P("(1;[3,1])")) is Prefilter.RULED_OUT
    assert abelian_prefilter(families.abelian_product(6, 2), P("(2;[6,1])")) is Prefilter.RULED_OUT
    assert abelian_prefilter(families.generalized_quaternion(2), P("(1;[2,1])")) is Prefilter.UNKNOWN
    assert abelian_prefilter(families.cyclic(3), P("(0;[3,3])")) is Prefilter.UNKNOWN


def test_budget_exceeded_is_not_a_none():
    G = families.dihedral(6)
    with pytest.raises(BudgetExceeded) as exc:
        exists_generating_vector(G, P("(1;[2,4])"), budget=50)
    assert exc.value.transitions > 50


def test_unknown_convention():
    with pytest.raises(ValueError):
        exists_generating_vector(families.dihedral(3), P("(1;-)"), convention="ab")


def test_witness_json_roundtrip():
    v = GeneratingVector(((1, 2), (0, 3)), (4, 5))
    assert GeneratingVector.from_json(v.to_json()) == v


def test_deterministic_witnesses(catalog):
    G = catalog.group("A4")
    a = exists_generating_vector(G, P("(0;[2,1],[3,2])"))
    b = exists_generating_vector(catalog.group("A4"), P("(0;[2,1],[3,2])"))
    assert a.witness == b.witness is not None


def test_oracle_agreement(catalog):
    # the search against plain enumeration of tuples
    checked = 0
    for G in small_groups(catalog):
        for sig in oracle_sample():
            res = exists_generating_vector(G, sig)
            assert res.exhaustive
            assert res.found == brute_force_exists(G, sig), (G.name, str(sig))
            if res.found:
                assert verify_generating_vector(G, sig, res.witness)
            checked += 1
    assert checked == 24 * 660


def test_convention_invariance(catalog):
    for G in small_groups(catalog):
        if G.is_abelian:
            continue
        for sig in oracle_sample():
            if sig.h == 0:
                continue
            a = exists_generating_vector(G, sig)
            b = exists_generating_vector(G, sig, convention=INVERSE_LAST)
            assert a.found == b.found, (G.name, str(sig))
            if b.found:
                assert verify_generating_vector(G, sig, b.witness, convention=INVERSE_LAST)


def test_quaternion_witness_fails_other_convention():
    for n in range(3, 8):
        Q = families.generalized_quaternion(n)
        x, y = Q.named("x"), Q.named("y")
        c = Q.product((y, Q.inv(Q.power(x, 2)), Q.inv(y)))
        v = GeneratingVector(((x, y),), (c,))
        sig = P(f"(1;[{n},1])")
        assert verify_generating_vector(Q, sig, v)
        assert not verify_generating_vector(Q, sig, v, convention=INVERSE_LAST)


def test_torus_quotient_without_branching(catalog):
    # (1; -) needs commuting a, b generating G: abelian of rank at most 2
    for n in range(2, 17):
        for G in catalog.groups_of_order(n).groups:
            found = exists_generating_vector(G, P("(1;-)")).found
            assert found == (G.is_abelian and _rank_le_2(G)), G.name


def _rank_le_2(G):
    return any(G.generated_subgroup([a, b]).order == G.order for a in range(G.order) for b in range(G.order))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["D4", "Q8", "A4", "D5", "C6xC2", "D6"]), st.integers(0, 1), st.lists(st.sampled_from([2, 3, 4, 5, 6]), max_size=3))
def test_witness_always_verifies(catalog, name, h, periods):
    G = catalog.group(name)
    sig = Signature.from_periods(h, periods)
    res = exists_generating_vector(G, sig)
    if res.found:
        assert verify_generating_vector(G, sig, res.witness)
    assert res.found == brute_force_exists(G, sig)
