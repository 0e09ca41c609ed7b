"""Road systems: families of subsets that generate betweenness relations.

A road system on a carrier is a family of subsets containing every singleton
and covering every pair.  It generates a relation by putting b between a and
c exactly when b lies in every road through both a and c.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .axioms import check_axiom
from .core import DomainError, Report, TernaryRelation, interval, make_carrier

Road = tuple[str, ...]


@dataclass(frozen=True)
class RoadSystem:
    carrier: tuple[str, ...]
    roads: tuple[Road, ...]

    def __init__(self, carrier: Iterable[str], roads: Iterable[Iterable[str]]):
        labels = make_carrier(carrier)
        pool = set(labels)
        norm = set()
        for road in roads:
            road = tuple(sorted(set(road)))
            if not pool.issuperset(road):
                raise DomainError(f"road {road!r} uses labels outside the carrier")
            norm.add(road)
        object.__setattr__(self, "carrier", labels)
        object.__setattr__(self, "roads", tuple(sorted(norm)))


def validate_road_system(rs: RoadSystem) -> Report:
    """Both defining conditions; witnesses are missing singletons and
    uncovered pairs."""
    have = set(rs.roads)
    bad: list[tuple] = []
    for x in rs.carrier:
        if (x,) not in have:
            bad.append((x,))
    for i, x in enumerate(rs.carrier):
        for y in rs.carrier[i + 1:]:
            if not any(x in road and y in road for road in rs.roads):
                bad.append((x, y))
    return Report(bad)


def relation_from_roads(rs: RoadSystem) -> TernaryRelation:
    """(a,b,c) holds iff b lies in every road containing both a and c."""
    check = validate_road_system(rs)
    if not check.holds:
        raise DomainError(f"invalid road system, witnesses {check.witnesses}")
    triples = set()
    for a in rs.carrier:
        for c in rs.carrier:
            through = [road for road in rs.roads if a in road and c in road]
            common = set(rs.carrier)
            for road in through:
                common.intersection_update(road)
            for b in common:
                triples.add((a, b, c))
    return TernaryRelation(rs.carrier, triples)


def intervals_as_roads(rel: TernaryRelation) -> RoadSystem:
    """The interval family of a relation as a road system.

    Needs R1 through R3: R1 puts both endpoints in every interval (pair
    cover) and R3 makes [a,a] the singleton {a}.
    """
    for ax in ("R1", "R2", "R3"):
        report = check_axiom(rel, ax)
        if not report.holds:
            raise DomainError(f"input fails {ax}, witness {report.witnesses[0]}")
    roads = {tuple(sorted(interval(rel, a, b)))
             for a in rel.carrier for b in rel.carrier}
    return RoadSystem(rel.carrier, roads)


def road_system_to_json(rs: RoadSystem) -> dict:
    return {"elements": list(rs.carrier), "roads": [list(r) for r in rs.roads]}


def road_system_from_json(data: dict) -> RoadSystem:
    if not isinstance(data, dict) or "roads" not in data:
        raise DomainError("road system document needs a 'roads' list")
    return RoadSystem(data.get("elements", ()), data["roads"])
