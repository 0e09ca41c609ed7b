"""Axiom checks and their witnesses."""

from __future__ import annotations

import random

import pytest

from betweenness import (AXIOMS, B4, C3, EX7, EX7_GLUED, TRI, DomainError,
                         TernaryRelation, betweenness_from_lattice,
                         bottom_relation, check_axiom, is_r_relation, l12,
                         top_relation)
from oracles import BRUTE, random_relation


def test_tri_fails_antisymmetry_with_the_clashing_pair():
    report = check_axiom(TRI, "ANTISYM")
    assert not report.holds
    assert (("a", "b", "c"), ("a", "c", "b")) in report.witnesses


def test_transitivity_counts_degenerate_premise_instances():
    # The sweep has no side conditions, so endpoint triples may serve as
    # premises: (a,a,x) and (a,c,x) and (a,b,c) force (a,b,x) in EX7, which
    # is absent.  Both junction points show up this way.
    report = check_axiom(EX7, "R4")
    assert not report.holds
    assert set(report.witnesses) == {
        ("a", "b", "x", "a", "c"), ("a", "b", "x", "c", "a"),
        ("a", "d1", "x", "a", "c"), ("a", "d1", "x", "c", "a"),
        ("x", "b", "a", "a", "c"), ("x", "b", "a", "c", "a"),
        ("x", "d1", "a", "a", "c"), ("x", "d1", "a", "c", "a"),
    }


def test_glued_form_fails_transitivity_at_the_crossing():
    report = check_axiom(EX7_GLUED, "R4")
    assert not report.holds
    # conclusion-first witness: (a,x,c) is forced by (a,b,c),(a,d1,c),(b,x,d1)
    assert ("a", "x", "c", "b", "d1") in report.witnesses


def test_r4_witnesses_substitute_back():
    report = check_axiom(EX7_GLUED, "R4")
    assert len(report.witnesses) == 12
    for (a, x, c, b, d) in report.witnesses:
        assert (a, b, c) in EX7_GLUED.triples
        assert (a, d, c) in EX7_GLUED.triples
        assert (b, x, d) in EX7_GLUED.triples
        assert (a, x, c) not in EX7_GLUED.triples


@pytest.mark.parametrize("axiom", AXIOMS)
def test_bottom_passes_everything(axiom):
    assert check_axiom(bottom_relation(["a", "b", "c", "d"]), axiom).holds


def test_extremes_are_four_axiom_relations():
    for size in range(1, 5):
        carrier = [f"e{i}" for i in range(size)]
        assert is_r_relation(bottom_relation(carrier))
        assert is_r_relation(top_relation(carrier))


def test_explicit_violator():
    rel = TernaryRelation(["a", "b"], [("a", "b", "a")])
    assert not check_axiom(rel, "R3").holds
    assert not check_axiom(rel, "R1").holds
    assert not is_r_relation(rel)


def test_unknown_axiom_name():
    with pytest.raises(DomainError):
        check_axiom(TRI, "R9")


def test_disjunctivity_separates_the_chain_from_the_diamond():
    chain = betweenness_from_lattice(C3)
    assert check_axiom(chain, "DISJ").holds
    diamond = betweenness_from_lattice(B4)
    report = check_axiom(diamond, "DISJ")
    assert not report.holds
    for (a, x, b, c) in report.witnesses:
        assert (a, x, b) in diamond.triples
        assert (a, x, c) not in diamond.triples
        assert (c, x, b) not in diamond.triples


def test_checks_agree_with_the_verbatim_sweeps():
    rng = random.Random(11)
    for _ in range(150):
        labels = [chr(97 + i) for i in range(rng.randint(1, 3))]
        rel = random_relation(rng, labels, density=rng.uniform(0.05, 0.6))
        for axiom, sweep in BRUTE.items():
            assert check_axiom(rel, axiom).holds == sweep(rel)


def test_reflexivity_and_antisymmetry_force_minimality():
    rng = random.Random(12)
    hit = 0
    for _ in range(400):
        labels = [chr(97 + i) for i in range(rng.randint(2, 4))]
        rel = l12(random_relation(rng, labels, density=0.1))
        if check_axiom(rel, "ANTISYM").holds:
            hit += 1
            assert check_axiom(rel, "R3").holds
    assert hit > 10
