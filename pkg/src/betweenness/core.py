"""Carriers, ternary betweenness relations, maps, partitions, and quotients.

A relation is a finite set of string labels (the carrier) together with a set
of ordered triples over it.  The triple (a, b, c) is read "b lies between a
and c".  Everything here is immutable and hashable so relations can be used
as dict keys and memoised.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

Label = str
Triple = tuple[Label, Label, Label]


class DomainError(ValueError):
    """An operation was applied outside its domain contract."""


def make_carrier(labels: Iterable[Label]) -> tuple[Label, ...]:
    """Normalise an iterable of labels into a sorted, duplicate-free tuple."""
    pool = set(labels)
    for lab in pool:
        if not isinstance(lab, str):
            raise DomainError(f"carrier labels must be strings, got {lab!r}")
    return tuple(sorted(pool))


@dataclass(frozen=True)
class TernaryRelation:
    carrier: tuple[Label, ...]
    triples: frozenset[Triple]

    def __init__(self, carrier: Iterable[Label], triples: Iterable[Iterable[Label]]):
        labels = make_carrier(carrier)
        pool = set(labels)
        trips = set()
        for t in triples:
            t = tuple(t)
            if len(t) != 3:
                raise DomainError(f"not a triple: {t!r}")
            if not pool.issuperset(t):
                raise DomainError(f"triple {t!r} uses labels outside the carrier")
            trips.add(t)
        object.__setattr__(self, "carrier", labels)
        object.__setattr__(self, "triples", frozenset(trips))

    def __contains__(self, triple: Triple) -> bool:
        return triple in self.triples

    def with_triples(self, triples: Iterable[Iterable[Label]]) -> "TernaryRelation":
        """A relation on the same carrier with a different triple set."""
        return TernaryRelation(self.carrier, triples)

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples)


@dataclass(frozen=True)
class RelMap:
    """A carrier assignment between two relations (not necessarily monotone)."""

    source: TernaryRelation
    target: TernaryRelation
    assignment: Mapping[Label, Label]

    def __init__(self, source, target, assignment):
        assignment = dict(assignment)
        missing = set(source.carrier) - assignment.keys()
        if missing:
            raise DomainError(f"assignment not total, missing {sorted(missing)}")
        stray = {v for v in assignment.values()} - set(target.carrier)
        if stray:
            raise DomainError(f"assignment hits labels outside the target: {sorted(stray)}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "assignment", assignment)

    def __call__(self, label: Label) -> Label:
        return self.assignment[label]

    def image_triple(self, triple: Triple) -> Triple:
        a, b, c = triple
        return (self.assignment[a], self.assignment[b], self.assignment[c])

    @staticmethod
    def identity(rel: TernaryRelation) -> "RelMap":
        return RelMap(rel, rel, {x: x for x in rel.carrier})


def compose(outer: RelMap, inner: RelMap) -> RelMap:
    """The composite outer . inner (inner applied first)."""
    if inner.target is not outer.source and inner.target != outer.source:
        raise DomainError("maps do not compose: inner.target differs from outer.source")
    return RelMap(inner.source, outer.target,
                  {x: outer.assignment[inner.assignment[x]] for x in inner.source.carrier})


@dataclass(frozen=True)
class Partition:
    carrier: tuple[Label, ...]
    blocks: tuple[tuple[Label, ...], ...]

    def __init__(self, carrier: Iterable[Label], blocks: Iterable[Iterable[Label]]):
        labels = make_carrier(carrier)
        norm = tuple(sorted(tuple(sorted(set(b))) for b in blocks))
        seen: set[Label] = set()
        for block in norm:
            if not block:
                raise DomainError("empty block")
            if seen.intersection(block):
                raise DomainError("blocks overlap")
            seen.update(block)
        if seen != set(labels):
            raise DomainError("blocks do not cover the carrier")
        object.__setattr__(self, "carrier", labels)
        object.__setattr__(self, "blocks", norm)

    @staticmethod
    def discrete(carrier: Iterable[Label]) -> "Partition":
        labels = make_carrier(carrier)
        return Partition(labels, [(x,) for x in labels])

    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def representative(self, label: Label) -> Label:
        # representatives are the least label of each block
        return self.as_map()[label]

    def as_map(self) -> dict[Label, Label]:
        cached = self.__dict__.get("_map")
        if cached is None:
            cached = {x: block[0] for block in self.blocks for x in block}
            self.__dict__["_map"] = cached
        return cached


@dataclass(frozen=True)
class Report:
    """Outcome of a yes/no check with re-checkable counterexamples."""

    holds: bool
    witnesses: tuple

    def __init__(self, witnesses: Iterable):
        ws = tuple(witnesses)
        object.__setattr__(self, "holds", not ws)
        object.__setattr__(self, "witnesses", ws)


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    holds: bool
    witnesses: tuple

    def __init__(self, axiom: str, witnesses: Iterable):
        ws = tuple(witnesses)
        object.__setattr__(self, "axiom", axiom)
        object.__setattr__(self, "holds", not ws)
        object.__setattr__(self, "witnesses", ws)


def mirror_closure(triples: Iterable[Triple]) -> set[Triple]:
    """Close a triple set under the mirror symmetry (a,b,c) -> (c,b,a)."""
    out = set()
    for a, b, c in triples:
        out.add((a, b, c))
        out.add((c, b, a))
    return out


def bottom_relation(carrier: Iterable[Label]) -> TernaryRelation:
    """The least relation whose points are between themselves and everything:
    exactly the triples (a,b,b) and (b,b,a)."""
    labels = make_carrier(carrier)
    triples = set()
    for a in labels:
        for b in labels:
            triples.add((a, b, b))
            triples.add((b, b, a))
    return TernaryRelation(labels, triples)


def top_relation(carrier: Iterable[Label]) -> TernaryRelation:
    """The greatest admissible relation: every triple except (a,b,a) with a != b."""
    labels = make_carrier(carrier)
    triples = {(a, b, c)
               for a in labels for b in labels for c in labels
               if not (a == c and a != b)}
    return TernaryRelation(labels, triples)


def interval(rel: TernaryRelation, a: Label, b: Label) -> frozenset[Label]:
    """The points lying between a and b: {c | (a,c,b) in rel}."""
    if a not in rel.carrier or b not in rel.carrier:
        raise DomainError(f"labels {a!r}, {b!r} must belong to the carrier")
    return frozenset(c for c in rel.carrier if (a, c, b) in rel.triples)


def is_monotone(f: RelMap) -> Report:
    """Check that every source triple lands in the target; witnesses are the
    source triples whose image is missing."""
    bad = [t for t in f.source.sorted_triples()
           if f.image_triple(t) not in f.target.triples]
    return Report(bad)


def quotient_relation(rel: TernaryRelation, part: Partition) -> tuple[TernaryRelation, RelMap]:
    """Collapse each block to its representative; a quotient triple is present
    iff some preimage triple is."""
    if part.carrier != rel.carrier:
        raise DomainError("partition is over a different carrier")
    to_rep = part.as_map()
    carrier = sorted({to_rep[x] for x in rel.carrier})
    triples = {(to_rep[a], to_rep[b], to_rep[c]) for (a, b, c) in rel.triples}
    quotient = TernaryRelation(carrier, triples)
    return quotient, RelMap(rel, quotient, to_rep)


# --- JSON (de)serialisation -------------------------------------------------

def relation_to_json(rel: TernaryRelation) -> dict:
    return {
        "elements": list(rel.carrier),
        "triples": [list(t) for t in rel.sorted_triples()],
        "r2_closure": False,
    }


def relation_from_json(data: dict) -> TernaryRelation:
    """Read a relation document.  Unless r2_closure is false, the listed
    triples are closed under mirroring (files may list one orientation)."""
    if not isinstance(data, dict) or "elements" not in data:
        raise DomainError("relation document needs an 'elements' list")
    elements = data["elements"]
    triples = [tuple(t) for t in data.get("triples", [])]
    if data.get("r2_closure", True):
        triples = mirror_closure(triples)  # type: ignore[assignment]
    return TernaryRelation(elements, triples)


def load_relation(path: str) -> TernaryRelation:
    with open(path, encoding="utf-8") as fh:
        return relation_from_json(json.load(fh))


def dump_relation(rel: TernaryRelation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(relation_to_json(rel), fh, indent=2, sort_keys=True)
        fh.write("\n")
