"""Posets, lattices, classification, reflection, and completion."""

from __future__ import annotations

import random

import pytest

from betweenness import (B4, C3, M3, N5, BoundWitness, DomainError,
                         FiniteLattice, FinitePoset, betweenness_from_lattice,
                         bottom_relation, check_axiom, classify_direct,
                         classify_via_betweenness, detect_bounds,
                         dm_betweenness_report, dm_completion,
                         distributive_reflection, is_r_relation,
                         lattice_from_json, lattice_to_json, poset_from_json,
                         poset_from_pairs, poset_to_json, recover_order)
from oracles import random_poset

C3_FLAGS = {"linear": True, "bounded": True, "complete": True, "modular": True,
            "distributive": True, "completely_distributive": True, "boolean": False}
B4_FLAGS = dict(C3_FLAGS, linear=False, boolean=True)
N5_FLAGS = {"linear": False, "bounded": True, "complete": True, "modular": False,
            "distributive": False, "completely_distributive": False, "boolean": False}
M3_FLAGS = dict(N5_FLAGS, modular=True)
FIXTURES = [(C3, C3_FLAGS), (B4, B4_FLAGS), (N5, N5_FLAGS), (M3, M3_FLAGS)]


def test_poset_validation():
    with pytest.raises(DomainError):
        FinitePoset("ab", [("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")])
    with pytest.raises(DomainError):
        FinitePoset("ab", [("a", "b")])  # missing reflexive pairs
    with pytest.raises(DomainError):
        poset_from_pairs("abc", [("a", "b"), ("b", "c"), ("c", "a")])


def test_poset_from_pairs_closes_transitively():
    poset = poset_from_pairs("abc", [("a", "b"), ("b", "c")])
    assert poset.le("a", "c")
    assert poset.covers() == [("a", "b"), ("b", "c")]


def test_two_antichain_is_not_a_lattice():
    with pytest.raises(DomainError):
        FiniteLattice(poset_from_pairs("xy", []))


def test_lattice_tables():
    assert B4.meet("p", "q") == "0"
    assert B4.join("p", "q") == "1"
    assert B4.bottom == "0" and B4.top == "1"
    assert N5.join("a", "b") == "1"
    assert M3.meet("x", "y") == "0"


def test_betweenness_examples():
    rel = betweenness_from_lattice(C3)
    assert ("0", "1", "2") in rel.triples
    assert ("1", "0", "2") not in rel.triples
    assert len(rel.triples) == 17
    diamond = betweenness_from_lattice(M3)
    assert ("x", "z", "y") in diamond.triples
    assert ("x", "y", "z") in diamond.triples
    point = FiniteLattice(poset_from_pairs("p", []))
    assert betweenness_from_lattice(point) == bottom_relation("p")
    assert len(betweenness_from_lattice(B4).triples) == 36


def test_betweenness_is_always_a_four_axiom_relation():
    rng = random.Random(51)
    for _ in range(30):
        lat, _ = dm_completion(random_poset(rng, rng.randint(1, 6)))
        assert is_r_relation(betweenness_from_lattice(lat))


def test_recover_order_examples():
    chain = recover_order(betweenness_from_lattice(C3), "2")
    assert chain.le("0", "1") and chain.le("1", "2") and not chain.le("1", "0")
    square = recover_order(betweenness_from_lattice(B4), "1")
    assert square.leq == B4.poset.leq
    flat = recover_order(bottom_relation("ab"), "b")
    assert flat.le("a", "b") and not flat.le("b", "a")


def test_recover_order_reports_indistinguishable_points():
    with pytest.raises(DomainError):
        recover_order(betweenness_from_lattice(M3), "x")


def test_round_trip_through_betweenness():
    rng = random.Random(52)
    done = 0
    while done < 25:
        lat, _ = dm_completion(random_poset(rng, rng.randint(1, 5)))
        if len(lat.poset.carrier) > 6:
            continue
        done += 1
        recovered = recover_order(betweenness_from_lattice(lat), lat.top)
        assert recovered.leq == lat.poset.leq


def test_detect_bounds():
    assert [(w.alpha, w.beta) for w in detect_bounds(betweenness_from_lattice(C3))] \
        == [("0", "2"), ("2", "0")]
    assert [(w.alpha, w.beta) for w in detect_bounds(betweenness_from_lattice(B4))] \
        == [("0", "1"), ("1", "0"), ("p", "q"), ("q", "p")]
    assert detect_bounds(bottom_relation("abc")) == []


@pytest.mark.parametrize("lat,flags", FIXTURES)
def test_classification_flags_by_both_routes(lat, flags):
    assert classify_direct(lat).flags() == flags
    rel = betweenness_from_lattice(lat)
    witness = BoundWitness(lat.bottom, lat.top)
    assert classify_via_betweenness(rel, witness).flags() == flags


def test_m3_distributivity_witness_is_an_antisymmetry_clash():
    rel = betweenness_from_lattice(M3)
    report = classify_via_betweenness(rel, BoundWitness("0", "1"))
    witness = report.distributive.witnesses[0]
    (a, b, c), (a2, c2, b2) = witness
    assert (a, b, c) in rel.triples and (a2, c2, b2) in rel.triples
    assert a == a2 and b == b2 and c == c2 and b != c


def test_n5_modularity_witness_substitutes_back():
    rel = betweenness_from_lattice(N5)
    report = classify_via_betweenness(rel, BoundWitness("0", "1"))
    assert not report.modular.holds
    x, y, c = report.modular.witnesses[0]
    from betweenness import interval
    assert x != y
    assert interval(rel, x, "1") <= interval(rel, y, "1")
    assert interval(rel, x, c) == interval(rel, y, c)


def test_classify_rejects_invalid_witnesses():
    rel = betweenness_from_lattice(C3)
    with pytest.raises(DomainError):
        classify_via_betweenness(rel, BoundWitness("0", "0"))
    with pytest.raises(DomainError):
        classify_via_betweenness(rel, BoundWitness("0", "missing"))


def test_classify_guard_on_large_carriers():
    labels = [f"{i:02d}" for i in range(13)]
    pairs = [(labels[i], labels[i + 1]) for i in range(12)]
    lat = FiniteLattice(poset_from_pairs(labels, pairs))
    rel = betweenness_from_lattice(lat)
    with pytest.raises(DomainError):
        classify_via_betweenness(rel, BoundWitness("00", "12"))


def test_reflection_is_the_identity_on_distributive_inputs():
    for lat in (C3, B4):
        reflected, send = distributive_reflection(lat)
        assert sorted(send.values()) == list(lat.poset.carrier)
        assert all(lat.le(x, y) == reflected.le(send[x], send[y])
                   for x in lat.poset.carrier for y in lat.poset.carrier)


def test_reflection_collapses_the_diamond_to_a_point():
    reflected, send = distributive_reflection(M3)
    assert len(reflected.poset.carrier) == 1
    assert len(set(send.values())) == 1


def test_reflection_of_the_pentagon():
    reflected, send = distributive_reflection(N5)
    assert len(reflected.poset.carrier) == 4
    assert send["a"] == send["c"]
    assert len({send["0"], send["1"], send["a"], send["b"]}) == 4
    assert classify_direct(reflected).flags()["distributive"]
    for x in N5.poset.carrier:
        for y in N5.poset.carrier:
            assert send[N5.meet(x, y)] == reflected.meet(send[x], send[y])
            assert send[N5.join(x, y)] == reflected.join(send[x], send[y])


def test_dm_completion_of_antichains():
    two, emb = dm_completion(poset_from_pairs("xy", []))
    assert len(two.poset.carrier) == 4
    assert not two.le(emb["x"], emb["y"]) and not two.le(emb["y"], emb["x"])
    three, _ = dm_completion(poset_from_pairs("xyz", []))
    flags = classify_direct(three).flags()
    assert len(three.poset.carrier) == 5
    assert flags["modular"] and not flags["distributive"]


def test_dm_completion_of_chains_and_lattices():
    chain, emb = dm_completion(poset_from_pairs("012", [("0", "1"), ("1", "2")]))
    assert len(chain.poset.carrier) == 3
    assert emb == {"0": "{0}", "1": "{0,1}", "2": "{0,1,2}"}
    for lat in (C3, B4, N5, M3):
        completed, q = dm_completion(lat.poset)
        assert len(completed.poset.carrier) == len(lat.poset.carrier)
        assert all(lat.le(x, y) == completed.le(q[x], q[y])
                   for x in lat.poset.carrier for y in lat.poset.carrier)


def test_dm_embedding_preserves_existing_bounds():
    rng = random.Random(53)
    for _ in range(40):
        poset = random_poset(rng, rng.randint(1, 6))
        lat, emb = dm_completion(poset)
        for x in poset.carrier:
            for y in poset.carrier:
                assert poset.le(x, y) == lat.le(emb[x], emb[y])
                uppers = poset.up(x) & poset.up(y)
                least = [u for u in uppers
                         if all(poset.le(u, v) for v in uppers)]
                if least:
                    assert lat.join(emb[x], emb[y]) == emb[least[0]]


def test_dm_guard():
    with pytest.raises(DomainError):
        dm_completion(poset_from_pairs([f"{i:02d}" for i in range(13)], []))


def test_dm_betweenness_report_examples():
    assert dm_betweenness_report(poset_from_pairs("xy", [])).holds
    assert dm_betweenness_report(poset_from_pairs("012", [("0", "1"), ("1", "2")])).holds
    rng = random.Random(54)
    for _ in range(25):
        assert dm_betweenness_report(random_poset(rng, 6)).holds


def test_poset_and_lattice_json_round_trips():
    doc = poset_to_json(N5.poset)
    assert poset_from_json(doc).leq == N5.poset.leq
    lat_doc = lattice_to_json(B4)
    again = lattice_from_json(lat_doc)
    assert again.poset.leq == B4.poset.leq
    assert again.meet("p", "q") == "0"
    with pytest.raises(DomainError):
        poset_from_json({"elements": ["a"]})
