"""Closure operators: enrichment steps, quotient steps, and the alternation."""

from __future__ import annotations

import random

import pytest

from betweenness import (ANTISYMMETRY, MINIMALITY, C3, EX7, EX7_EXTENDED,
                         EX7_GLUED, TRI, DomainError, TernaryRelation,
                         antisym_step, antisymmetric_closure,
                         betweenness_from_lattice, bottom_relation,
                         check_axiom, closure_result_to_json, is_monotone,
                         is_r_relation, l3, l4, l12, mirror_closure,
                         r_closure, relation_from_json, sim_partition)
from oracles import random_relation, random_road_relation


def _sym(carrier, seeds):
    return bottom_relation(carrier).with_triples(
        set(bottom_relation(carrier).triples) | mirror_closure(seeds))


def test_l12_examples():
    empty = TernaryRelation("ab", [])
    assert l12(empty) == bottom_relation("ab")
    one = TernaryRelation("abc", [("a", "b", "c")])
    assert l12(one) == _sym("abc", [("a", "b", "c")])
    assert l12(EX7) == EX7


def test_antisym_partition_of_ex7():
    part = sim_partition(EX7, ANTISYMMETRY)
    assert set(part.blocks) == {("d1", "d2"), ("a",), ("b",), ("c",), ("x",), ("y",)}


def test_antisym_partition_after_the_forced_triple():
    grown = EX7_GLUED.with_triples(
        set(EX7_GLUED.triples) | {("a", "x", "c"), ("c", "x", "a")})
    part = sim_partition(grown, ANTISYMMETRY)
    assert ("c", "x") in part.blocks


def test_minimality_partition_glues_through_degenerate_triples():
    rel = bottom_relation("ab").with_triples(
        set(bottom_relation("ab").triples) | {("a", "b", "a")})
    part = sim_partition(rel, MINIMALITY)
    assert part.blocks == (("a", "b"),)


def test_l3_is_the_identity_on_minimal_relations():
    result = l3(EX7)
    assert result.relation == EX7
    assert result.quotient.assignment == {x: x for x in EX7.carrier}
    assert result.trace == (("L3", 7, len(EX7.triples)),)


def test_l3_collapses_violators():
    rel = bottom_relation("ab").with_triples(
        set(bottom_relation("ab").triples) | {("a", "b", "a")})
    result = l3(rel)
    assert result.relation.carrier == ("a",)
    assert check_axiom(result.relation, "R3").holds


def test_l4_on_the_glued_example_adds_the_forced_crossings():
    # (a,x,c) is forced directly; once present it puts c into [a,x], and
    # [a,c] = {a,b,c,d1} is then absorbed into [a,x] as well
    grown = l4(EX7_GLUED)
    assert grown.triples - EX7_GLUED.triples == mirror_closure(
        [("a", "x", "c"), ("a", "b", "x"), ("a", "d1", "x")])
    assert check_axiom(grown, "R4").holds


def test_l4_fixpoints():
    chain = betweenness_from_lattice(C3)
    assert l4(chain) == chain
    assert l4(bottom_relation("abcd")) == bottom_relation("abcd")


def test_l4_and_l12_are_monotone_in_the_triple_set():
    rng = random.Random(31)
    for _ in range(60):
        labels = [chr(97 + i) for i in range(rng.randint(2, 4))]
        small = random_relation(rng, labels, density=0.15)
        extra = random_relation(rng, labels, density=0.1)
        big = small.with_triples(small.triples | extra.triples)
        assert l4(small).triples <= l4(big).triples
        assert l12(small).triples <= l12(big).triples


def test_l4_idempotent_and_sound():
    rng = random.Random(32)
    for _ in range(40):
        labels = [chr(97 + i) for i in range(rng.randint(2, 4))]
        rel = l3(l12(random_relation(rng, labels, density=0.2))).relation
        once = l4(rel)
        assert l4(once) == once
        assert check_axiom(once, "R4").holds


def test_r_closure_examples():
    result = r_closure(TernaryRelation("abc", []))
    assert result.relation == bottom_relation("abc")
    assert [entry[0] for entry in result.trace] == ["L12", "L3", "L4"]
    shrink = r_closure(TernaryRelation("ab", [("a", "b", "a")]))
    assert shrink.relation.carrier == ("a",)


def test_r_closure_fixpoint_characterisation():
    rng = random.Random(33)
    for _ in range(80):
        labels = [chr(97 + i) for i in range(rng.randint(1, 4))]
        rel = random_relation(rng, labels, density=0.2)
        result = r_closure(rel)
        assert is_r_relation(result.relation)
        assert is_monotone(result.quotient).holds
        assert (result.relation == rel) == is_r_relation(rel)
        again = r_closure(result.relation)
        assert again.relation == result.relation


def test_antisym_step_reproduces_the_first_glue():
    result = antisym_step(EX7)
    assert result.relation == EX7_GLUED
    assert result.trace == (("L_A", 6, 74),)
    assert result.quotient.assignment["d2"] == "d1"


def test_antisym_step_on_tri_and_on_fixed_points():
    result = antisym_step(TRI)
    assert result.relation == bottom_relation("ab")
    assert result.quotient.assignment["c"] == "b"
    chain = betweenness_from_lattice(C3)
    assert antisym_step(chain).relation == chain


def test_full_alternation_on_ex7():
    closed = antisymmetric_closure(EX7)
    assert closed.trace == (("L_A", 6, 74), ("L4", 6, 80),
                            ("L_A", 5, 51), ("identity", 5, 51))
    assert closed.relation == _sym(
        ("a", "b", "c", "d1", "y"),
        [("a", "b", "c"), ("a", "d1", "c"), ("b", "c", "d1")])
    sent = closed.quotient.assignment
    assert sent["d2"] == "d1" and sent["x"] == "c"
    assert is_monotone(closed.quotient).holds
    assert check_axiom(closed.relation, "ANTISYM").holds
    assert is_r_relation(closed.relation)


def test_full_alternation_on_tri():
    closed = antisymmetric_closure(TRI)
    assert closed.trace == (("L_A", 2, 6), ("identity", 2, 6))
    assert closed.relation == bottom_relation("ab")
    assert closed.quotient.assignment == {"a": "a", "b": "b", "c": "b"}


def test_extended_example_needs_two_full_rounds():
    closed = antisymmetric_closure(EX7_EXTENDED)
    assert closed.trace == (("L_A", 12, 298), ("L4", 12, 314),
                            ("L_A", 8, 128), ("identity", 8, 128))
    assert closed.relation.carrier == ("a", "a'", "b", "b'", "c", "c'", "d1", "y")
    assert is_r_relation(closed.relation)
    assert check_axiom(closed.relation, "ANTISYM").holds


def test_alternation_identity_on_antisymmetric_inputs():
    chain = betweenness_from_lattice(C3)
    closed = antisymmetric_closure(chain)
    assert closed.trace == (("identity", 3, 17),)
    assert closed.relation == chain


def test_alternation_is_idempotent_and_validates_input():
    once = antisymmetric_closure(EX7)
    assert antisymmetric_closure(once.relation).relation == once.relation
    bad = bottom_relation("ab").with_triples(
        set(bottom_relation("ab").triples) | {("a", "b", "a")})
    with pytest.raises(DomainError):
        antisymmetric_closure(bad)


def test_alternation_output_on_random_inputs():
    rng = random.Random(34)
    for _ in range(40):
        labels = [f"v{i}" for i in range(rng.randint(1, 5))]
        rel = random_road_relation(rng, labels)
        closed = antisymmetric_closure(rel)
        assert is_r_relation(closed.relation)
        assert check_axiom(closed.relation, "ANTISYM").holds
        assert is_monotone(closed.quotient).holds
        # the trace makes strict progress until the closing identity entry
        for before, after in zip(closed.trace, closed.trace[1:]):
            if after[0] == "identity":
                assert after[1:] == before[1:]
            else:
                assert after[1] < before[1] or after[2] > before[2]


def test_closure_result_json_shape():
    doc = closure_result_to_json(antisymmetric_closure(EX7))
    assert doc["trace"][0] == {"step": "L_A", "carrier": 6, "triples": 74}
    assert doc["quotient"]["map"]["x"] == "c"
    assert relation_from_json(doc["relation"]).carrier == ("a", "b", "c", "d1", "y")
