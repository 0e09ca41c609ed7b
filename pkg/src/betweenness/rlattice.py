"""The complete lattice of all four-axiom relations on a fixed carrier.

Meets are intersections; joins close the union; pullbacks restrict along a
carrier map; initial lifts combine pullbacks over a cone.  Enumeration over
small carriers doubles as the exhaustive oracle for all of the lattice laws.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .axioms import check_axiom, is_r_relation
from .closures import r_closure
from .core import (DomainError, TernaryRelation, bottom_relation, make_carrier,
                   top_relation)

ALL_R = "ALL_R"
ANTISYM_R = "ANTISYM_R"
R3_ONLY = "R3_ONLY"
FILTERS = (ALL_R, ANTISYM_R, R3_ONLY)

DEFAULT_MAX_CARRIER = 4


def _guard_carrier(n: int) -> None:
    limit = int(os.environ.get("BETWEENNESS_MAX_CARRIER", DEFAULT_MAX_CARRIER))
    if n > limit:
        raise DomainError(
            f"carrier of size {n} exceeds the enumeration guard of {limit} "
            "(override with BETWEENNESS_MAX_CARRIER)")


def _require_same_carrier(rels: Sequence[TernaryRelation]) -> tuple[str, ...]:
    if not rels:
        raise DomainError("need at least one relation")
    carrier = rels[0].carrier
    for rel in rels[1:]:
        if rel.carrier != carrier:
            raise DomainError("relations live on different carriers")
    return carrier


def _require_r(rels: Iterable[TernaryRelation]) -> None:
    for rel in rels:
        if not is_r_relation(rel):
            raise DomainError("input is not a four-axiom relation")


def meet(rels: Sequence[TernaryRelation]) -> TernaryRelation:
    """Intersection of the triple sets (the class is closed under it)."""
    carrier = _require_same_carrier(rels)
    _require_r(rels)
    triples = set(rels[0].triples)
    for rel in rels[1:]:
        triples &= rel.triples
    return TernaryRelation(carrier, triples)


def join(rels: Sequence[TernaryRelation]) -> TernaryRelation:
    """Closure of the union: the least common upper bound.

    The closure's gluing stage must be the identity here (a union of
    four-axiom relations contains no minimality violation to glue on); a
    carrier change would mean a bug, so it is reported, never papered over.
    """
    carrier = _require_same_carrier(rels)
    _require_r(rels)
    union = set()
    for rel in rels:
        union |= rel.triples
    closed = r_closure(TernaryRelation(carrier, union))
    if closed.relation.carrier != carrier:
        raise RuntimeError(
            "join collapsed the carrier, which contradicts the closure "
            f"analysis: {carrier} -> {closed.relation.carrier}")
    return closed.relation


def pullback(assignment: Mapping[str, str], rel: TernaryRelation) -> TernaryRelation:
    """Largest four-axiom relation on the assignment's domain making it
    monotone: the triple preimage, minus the (a,b,a) violators that a
    non-injective assignment would otherwise drag in."""
    _require_r([rel])
    assignment = dict(assignment)
    carrier = make_carrier(assignment.keys())
    stray = set(assignment.values()) - set(rel.carrier)
    if stray:
        raise DomainError(f"assignment hits labels outside the carrier: {sorted(stray)}")
    triples = set()
    for a in carrier:
        for b in carrier:
            for c in carrier:
                if a == c and a != b:
                    continue
                if (assignment[a], assignment[b], assignment[c]) in rel.triples:
                    triples.add((a, b, c))
    return TernaryRelation(carrier, triples)


@dataclass(frozen=True)
class Cone:
    """An apex carrier with assignments into a family of target relations."""

    apex: tuple[str, ...]
    legs: tuple[tuple[tuple[tuple[str, str], ...], TernaryRelation], ...]

    def __init__(self, apex: Iterable[str],
                 legs: Iterable[tuple[Mapping[str, str], TernaryRelation]]):
        apex = make_carrier(apex)
        frozen = []
        for assignment, target in legs:
            assignment = dict(assignment)
            if set(assignment.keys()) != set(apex):
                raise DomainError("leg assignment is not total on the apex")
            frozen.append((tuple(sorted(assignment.items())), target))
        object.__setattr__(self, "apex", apex)
        object.__setattr__(self, "legs", tuple(frozen))


def initial_lift(cone: Cone) -> TernaryRelation:
    """Finest relation on the apex making every leg monotone: the meet of the
    legs' pullbacks.  An empty cone lifts to the top relation."""
    if not cone.legs:
        return top_relation(cone.apex)
    pulled = [pullback(dict(assignment), target) for assignment, target in cone.legs]
    return meet(pulled)


def _mirror_orbits(carrier: tuple[str, ...]) -> tuple[tuple[tuple[str, str, str], ...], ...]:
    optional = sorted(top_relation(carrier).triples - bottom_relation(carrier).triples)
    orbits = []
    seen = set()
    for t in optional:
        if t in seen:
            continue
        orbit = {t, (t[2], t[1], t[0])}
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return tuple(orbits)


@lru_cache(maxsize=32)
def _enumerate_cached(carrier: tuple[str, ...], filter: str) -> tuple[TernaryRelation, ...]:
    base = bottom_relation(carrier)
    orbits = _mirror_orbits(carrier)
    found = []
    for mask in range(2 ** len(orbits)):
        triples = set(base.triples)
        for i, orbit in enumerate(orbits):
            if mask >> i & 1:
                triples.update(orbit)
        candidate = TernaryRelation(carrier, triples)
        # candidates satisfy R1-R3 by construction; only R4 needs checking
        if filter in (ALL_R, ANTISYM_R) and not check_axiom(candidate, "R4").holds:
            continue
        if filter == ANTISYM_R and not check_axiom(candidate, "ANTISYM").holds:
            continue
        found.append(candidate)
    found.sort(key=lambda rel: sorted(rel.triples))
    return tuple(found)


def enumerate_relations(carrier: Iterable[str], filter: str = ALL_R) -> list[TernaryRelation]:
    """All relations of the requested class on a small carrier, enumerated by
    mirror orbits over the bottom relation."""
    carrier = make_carrier(carrier)
    if filter not in FILTERS:
        raise DomainError(f"unknown filter {filter!r}, expected one of {FILTERS}")
    _guard_carrier(len(carrier))
    return list(_enumerate_cached(carrier, filter))
