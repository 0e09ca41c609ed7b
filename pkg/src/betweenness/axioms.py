"""Axiom checks for ternary betweenness relations, with counterexamples.

The checked properties:

  R1       every (a,b,b) and (b,b,a) is present (endpoints bound themselves)
  R2       mirror closure: (a,b,c) present implies (c,b,a) present
  R3       (a,b,a) present implies a = b
  R4       (a,b,c), (a,d,c), (b,x,d) present imply (a,x,c) present
  ANTISYM  (a,b,c) and (a,c,b) present imply b = c
  DISJ     x in [a,b] implies, for every c, (a,x,c) or (c,x,b) present

R4 is the unguarded five-variable sweep; degenerate instances (repeated
variables, endpoint premises supplied by R1 triples) count.  Witness shapes:
R1 the missing triple, R2/R3 the offending triple, R4 the forced-but-missing
conclusion first as (a,x,c,b,d), ANTISYM the pair of clashing triples, DISJ
the tuple (a,x,b,c) with both disjuncts absent.
"""

from __future__ import annotations

from itertools import product

from .core import AxiomReport, DomainError, TernaryRelation

AXIOMS = ("R1", "R2", "R3", "R4", "ANTISYM", "DISJ")
R_AXIOMS = ("R1", "R2", "R3", "R4")


def _check_r1(rel: TernaryRelation):
    for a in rel.carrier:
        for b in rel.carrier:
            if (a, b, b) not in rel.triples:
                yield (a, b, b)
            if (b, b, a) not in rel.triples:
                yield (b, b, a)


def _check_r2(rel: TernaryRelation):
    for (a, b, c) in rel.sorted_triples():
        if (c, b, a) not in rel.triples:
            yield (a, b, c)


def _check_r3(rel: TernaryRelation):
    for (a, b, c) in rel.sorted_triples():
        if a == c and a != b:
            yield (a, b, c)


def _check_r4(rel: TernaryRelation):
    present = rel.triples
    seen = set()
    for (a, b, c), (a2, d, c2) in product(rel.triples, repeat=2):
        if a != a2 or c != c2:
            continue
        for x in rel.carrier:
            if (b, x, d) in present and (a, x, c) not in present:
                seen.add((a, x, c, b, d))
    return sorted(seen)


def _check_antisym(rel: TernaryRelation):
    for (a, b, c) in rel.sorted_triples():
        if b != c and (a, c, b) in rel.triples:
            yield ((a, b, c), (a, c, b))


def _check_disj(rel: TernaryRelation):
    for (a, x, b) in rel.sorted_triples():
        for c in rel.carrier:
            if (a, x, c) not in rel.triples and (c, x, b) not in rel.triples:
                yield (a, x, b, c)


_CHECKS = {
    "R1": _check_r1,
    "R2": _check_r2,
    "R3": _check_r3,
    "R4": _check_r4,
    "ANTISYM": _check_antisym,
    "DISJ": _check_disj,
}


def check_axiom(rel: TernaryRelation, axiom: str) -> AxiomReport:
    if axiom not in _CHECKS:
        raise DomainError(f"unknown axiom {axiom!r}, expected one of {AXIOMS}")
    return AxiomReport(axiom, _CHECKS[axiom](rel))


def is_r_relation(rel: TernaryRelation) -> bool:
    """True iff R1 through R4 all hold."""
    return all(check_axiom(rel, ax).holds for ax in R_AXIOMS)
