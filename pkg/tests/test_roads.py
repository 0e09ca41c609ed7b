"""Road systems and the relations they generate."""

from __future__ import annotations

import random

import pytest

from betweenness import (C3, EX7, TRI, DomainError, RoadSystem,
                         betweenness_from_lattice, bottom_relation,
                         enumerate_relations, intervals_as_roads, is_r_relation,
                         relation_from_roads, road_system_from_json,
                         road_system_to_json, top_relation,
                         validate_road_system)
from oracles import random_road_relation


def test_roads_are_normalised_and_label_checked():
    rs = RoadSystem(["b", "a"], [["a"], ["b", "a"], ["a", "b"], ["b"]])
    assert rs.roads == (("a",), ("a", "b"), ("b",))
    with pytest.raises(DomainError):
        RoadSystem(["a"], [["a", "q"]])


def test_validation_conditions():
    good = RoadSystem("abc", [["a"], ["b"], ["c"], ["a", "b", "c"]])
    assert validate_road_system(good).holds
    no_pairs = RoadSystem("ab", [["a"], ["b"]])
    report = validate_road_system(no_pairs)
    assert not report.holds
    assert ("a", "b") in report.witnesses
    no_singleton = RoadSystem("ab", [["a"], ["a", "b"]])
    assert ("b",) in validate_road_system(no_singleton).witnesses


def test_one_big_road_generates_the_top_relation():
    rs = RoadSystem("abc", [["a"], ["b"], ["c"], ["a", "b", "c"]])
    assert relation_from_roads(rs) == top_relation("abc")


def test_all_pairs_generate_the_bottom_relation():
    rs = RoadSystem("abc", [["a"], ["b"], ["c"],
                            ["a", "b"], ["a", "c"], ["b", "c"]])
    assert relation_from_roads(rs) == bottom_relation("abc")


def test_chain_intervals_generate_chain_betweenness():
    rs = RoadSystem("012", [["0"], ["1"], ["2"],
                            ["0", "1"], ["1", "2"], ["0", "1", "2"]])
    rel = relation_from_roads(rs)
    assert rel == betweenness_from_lattice(C3)
    assert ("0", "1", "2") in rel.triples
    assert ("1", "0", "2") not in rel.triples


def test_generation_requires_a_valid_system():
    with pytest.raises(DomainError):
        relation_from_roads(RoadSystem("ab", [["a"], ["b"]]))


def test_interval_roads_examples():
    rs = intervals_as_roads(bottom_relation("ab"))
    assert set(rs.roads) == {("a",), ("b",), ("a", "b")}
    assert ("a", "b", "c") in intervals_as_roads(TRI).roads
    assert ("a", "b", "c", "d1") in intervals_as_roads(EX7).roads


def test_interval_roads_need_the_first_three_axioms():
    bad = bottom_relation("ab").with_triples(
        set(bottom_relation("ab").triples) | {("a", "b", "a")})
    with pytest.raises(DomainError):
        intervals_as_roads(bad)


def test_round_trip_on_every_small_relation():
    # every four-axiom relation on up to 4 labels is regenerated exactly by
    # its own interval family
    for size in range(1, 5):
        carrier = [chr(97 + i) for i in range(size)]
        for rel in enumerate_relations(carrier):
            assert relation_from_roads(intervals_as_roads(rel)) == rel


def test_random_systems_generate_four_axiom_relations():
    rng = random.Random(23)
    for _ in range(60):
        labels = [f"v{i}" for i in range(rng.randint(1, 5))]
        assert is_r_relation(random_road_relation(rng, labels))


def test_json_round_trip():
    rs = intervals_as_roads(TRI)
    doc = road_system_to_json(rs)
    assert doc["elements"] == ["a", "b", "c"]
    again = road_system_from_json(doc)
    assert again.roads == rs.roads
    with pytest.raises(DomainError):
        road_system_from_json({"elements": ["a"]})
