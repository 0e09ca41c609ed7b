"""Finite posets and lattices, and their traffic with betweenness relations.

A lattice generates a betweenness relation through its order intervals
((a,y,b) iff a-meet-b <= y <= a-join-b); conversely an order is recovered
from a relation and a chosen top-like basepoint.  The classification report
decides linearity, boundedness, completeness, modularity, distributivity,
complete distributivity, and Booleanness either from the betweenness side
(classify_via_betweenness) or the order side (classify_direct); the two
routes are independent implementations meant to be compared.

Also here: the distributive reflection (antisymmetrise the betweenness, read
the order back off the quotient) and the Dedekind-MacNeille completion by
cuts, with a report checking that completion preserves betweenness of
incomparable pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping

from .axioms import check_axiom, is_r_relation
from .closures import antisymmetric_closure
from .core import (DomainError, Report, TernaryRelation, interval,
                   make_carrier)
from .roads import RoadSystem, relation_from_roads

SUBSET_GUARD = 12


@dataclass(frozen=True)
class FinitePoset:
    carrier: tuple[str, ...]
    leq: frozenset[tuple[str, str]]

    def __init__(self, carrier: Iterable[str], leq: Iterable[tuple[str, str]]):
        labels = make_carrier(carrier)
        pool = set(labels)
        pairs = {(a, b) for (a, b) in leq}
        for (a, b) in pairs:
            if a not in pool or b not in pool:
                raise DomainError(f"order pair ({a!r}, {b!r}) outside the carrier")
        for x in labels:
            if (x, x) not in pairs:
                raise DomainError(f"order not reflexive at {x!r}")
        for (a, b) in pairs:
            if a != b and (b, a) in pairs:
                raise DomainError(f"order not antisymmetric on {a!r}, {b!r}")
            for c in labels:
                if (b, c) in pairs and (a, c) not in pairs:
                    raise DomainError(f"order not transitive via {a!r} <= {b!r} <= {c!r}")
        object.__setattr__(self, "carrier", labels)
        object.__setattr__(self, "leq", frozenset(pairs))

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.leq

    def down(self, x: str) -> frozenset[str]:
        return frozenset(a for a in self.carrier if (a, x) in self.leq)

    def up(self, x: str) -> frozenset[str]:
        return frozenset(a for a in self.carrier if (x, a) in self.leq)

    def covers(self) -> list[tuple[str, str]]:
        """Pairs (a, b) with a < b and nothing strictly between (Hasse edges)."""
        out = []
        for (a, b) in sorted(self.leq):
            if a == b:
                continue
            if any(c not in (a, b) and self.le(a, c) and self.le(c, b)
                   for c in self.carrier):
                continue
            out.append((a, b))
        return out


class FiniteLattice:
    """A finite poset in which every pair has a meet and a join (hence
    bounded); the binary tables are computed and validated up front."""

    def __init__(self, poset: FinitePoset):
        if not poset.carrier:
            raise DomainError("a lattice needs a nonempty carrier")
        self.poset = poset
        self.carrier = poset.carrier
        self._meet: dict[tuple[str, str], str] = {}
        self._join: dict[tuple[str, str], str] = {}
        for a in poset.carrier:
            for b in poset.carrier:
                self._meet[(a, b)] = self._bound(a, b, lower=True)
                self._join[(a, b)] = self._bound(a, b, lower=False)
        self.bottom = self._meet_all(poset.carrier)
        self.top = self._join_all(poset.carrier)

    def _bound(self, a: str, b: str, lower: bool) -> str:
        if lower:
            candidates = [x for x in self.carrier
                          if self.poset.le(x, a) and self.poset.le(x, b)]
            best = [x for x in candidates
                    if all(self.poset.le(y, x) for y in candidates)]
        else:
            candidates = [x for x in self.carrier
                          if self.poset.le(a, x) and self.poset.le(b, x)]
            best = [x for x in candidates
                    if all(self.poset.le(x, y) for y in candidates)]
        if len(best) != 1:
            kind = "meet" if lower else "join"
            raise DomainError(f"no {kind} for {a!r}, {b!r}: not a lattice")
        return best[0]

    def _meet_all(self, labels: Iterable[str]) -> str:
        out = None
        for x in labels:
            out = x if out is None else self._meet[(out, x)]
        return out

    def _join_all(self, labels: Iterable[str]) -> str:
        out = None
        for x in labels:
            out = x if out is None else self._join[(out, x)]
        return out

    def le(self, a: str, b: str) -> bool:
        return self.poset.le(a, b)

    def meet(self, a: str, b: str) -> str:
        return self._meet[(a, b)]

    def join(self, a: str, b: str) -> str:
        return self._join[(a, b)]

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteLattice) and self.poset == other.poset

    def __hash__(self) -> int:
        return hash(self.poset)

    @staticmethod
    def from_pairs(carrier: Iterable[str], strict_pairs: Iterable[tuple[str, str]]) -> "FiniteLattice":
        """Build from generating order pairs (reflexive-transitive closure applied)."""
        return FiniteLattice(poset_from_pairs(carrier, strict_pairs))


def poset_from_pairs(carrier: Iterable[str], pairs: Iterable[tuple[str, str]]) -> FinitePoset:
    """Reflexive-transitive closure of the given pairs, validated as a poset."""
    labels = make_carrier(carrier)
    leq = {(x, x) for x in labels} | {tuple(p) for p in pairs}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(leq):
            for c in labels:
                if (b, c) in leq and (a, c) not in leq:
                    leq.add((a, c))
                    changed = True
    return FinitePoset(labels, leq)


@dataclass(frozen=True)
class BoundWitness:
    alpha: str
    beta: str


@dataclass(frozen=True)
class ClassificationReport:
    linear: Report
    bounded: Report
    complete: Report
    modular: Report
    distributive: Report
    completely_distributive: Report
    boolean: Report

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name).holds for name in (
            "linear", "bounded", "complete", "modular", "distributive",
            "completely_distributive", "boolean")}


def betweenness_from_lattice(lat: FiniteLattice) -> TernaryRelation:
    """(a,y,b) holds iff y sits inside the order interval from a-meet-b up to
    a-join-b."""
    triples = set()
    for a in lat.carrier:
        for b in lat.carrier:
            lo, hi = lat.meet(a, b), lat.join(a, b)
            for y in lat.carrier:
                if lat.le(lo, y) and lat.le(y, hi):
                    triples.add((a, y, b))
    return TernaryRelation(lat.carrier, triples)


def recover_order(rel: TernaryRelation, beta: str) -> FinitePoset:
    """Read an order off a relation: x <= y iff the interval [y, beta] is
    contained in [x, beta]."""
    if beta not in rel.carrier:
        raise DomainError(f"basepoint {beta!r} not in the carrier")
    if not is_r_relation(rel):
        raise DomainError("order recovery needs a four-axiom relation")
    toward = {x: interval(rel, x, beta) for x in rel.carrier}
    leq = {(x, y) for x in rel.carrier for y in rel.carrier
           if toward[y] <= toward[x]}
    for x, y in combinations(rel.carrier, 2):
        if (x, y) in leq and (y, x) in leq:
            raise DomainError(
                f"recovered order is not antisymmetric: {x!r} and {y!r} have "
                f"the same interval toward {beta!r}")
    return FinitePoset(rel.carrier, leq)


def _separates(rel: TernaryRelation, beta: str) -> bool:
    seen = {}
    for x in rel.carrier:
        key = interval(rel, x, beta)
        if key in seen:
            return False
        seen[key] = x
    return True


def detect_bounds(rel: TernaryRelation) -> list[BoundWitness]:
    """All ordered pairs (alpha, beta) whose interval is the whole carrier and
    whose beta-intervals separate points."""
    if not is_r_relation(rel):
        raise DomainError("bound detection needs a four-axiom relation")
    everything = frozenset(rel.carrier)
    out = []
    for alpha in rel.carrier:
        for beta in rel.carrier:
            if interval(rel, alpha, beta) == everything and _separates(rel, beta):
                out.append(BoundWitness(alpha, beta))
    return out


def _validate_witness(rel: TernaryRelation, witness: BoundWitness) -> list[tuple]:
    bad: list[tuple] = []
    if witness.alpha not in rel.carrier or witness.beta not in rel.carrier:
        raise DomainError("witness labels outside the carrier")
    if interval(rel, witness.alpha, witness.beta) != frozenset(rel.carrier):
        bad.append(("interval", witness.alpha, witness.beta))
    seen: dict[frozenset, str] = {}
    for x in rel.carrier:
        key = interval(rel, x, witness.beta)
        if key in seen:
            bad.append(("separation", seen[key], x))
        else:
            seen[key] = x
    return bad


def classify_via_betweenness(rel: TernaryRelation,
                             witness: BoundWitness) -> ClassificationReport:
    """Decide all seven flags from the relation alone, using the basepoint
    pair of the witness."""
    if not is_r_relation(rel):
        raise DomainError("classification needs a four-axiom relation")
    problems = _validate_witness(rel, witness)
    if problems:
        raise DomainError(f"invalid bound witness: {problems}")
    if len(rel.carrier) > SUBSET_GUARD:
        raise DomainError(
            f"carrier too large for the subset sweep (> {SUBSET_GUARD})")
    beta = witness.beta
    carrier = rel.carrier
    toward = {x: interval(rel, x, beta) for x in carrier}
    interval_index: dict[frozenset, str] = {}
    for p in carrier:
        interval_index.setdefault(toward[p], p)

    linear = check_axiom(rel, "DISJ")
    bounded = Report(problems)

    complete_bad = []
    labels = list(carrier)
    for mask in range(2 ** len(labels)):
        chosen = [labels[i] for i in range(len(labels)) if mask >> i & 1]
        meet_set = frozenset(carrier)
        for x in chosen:
            meet_set &= toward[x]
        if meet_set not in interval_index:
            complete_bad.append(tuple(chosen))
    complete = Report(complete_bad)

    modular_bad = []
    for x, y, c in product(carrier, repeat=3):
        if x != y and toward[x] <= toward[y] and interval(rel, x, c) == interval(rel, y, c):
            modular_bad.append((x, y, c))
    modular = Report(modular_bad)

    distributive = check_axiom(rel, "ANTISYM")
    completely_distributive = Report(complete.witnesses + distributive.witnesses)

    boolean_bad = list(distributive.witnesses)
    for x in carrier:
        if not any(interval(rel, x, y) == frozenset(carrier) for y in carrier):
            boolean_bad.append(("complement", x))
    boolean = Report(boolean_bad)

    return ClassificationReport(
        linear=Report(linear.witnesses),
        bounded=bounded,
        complete=complete,
        modular=modular,
        distributive=Report(distributive.witnesses),
        completely_distributive=completely_distributive,
        boolean=boolean,
    )


def _find_pentagons(lat: FiniteLattice) -> list[tuple]:
    out = []
    for a, c in product(lat.carrier, repeat=2):
        if a == c or not lat.le(a, c):
            continue
        for b in lat.carrier:
            if b in (a, c):
                continue
            bottom, top = lat.meet(a, b), lat.join(a, b)
            if lat.meet(c, b) == bottom and lat.join(c, b) == top \
                    and bottom not in (a, b, c) and top not in (a, b, c):
                out.append((bottom, a, b, c, top))
    return out


def _find_diamonds(lat: FiniteLattice) -> list[tuple]:
    out = []
    for x, y, z in combinations(lat.carrier, 3):
        bottom = lat.meet(x, y)
        if lat.meet(x, z) != bottom or lat.meet(y, z) != bottom:
            continue
        top = lat.join(x, y)
        if lat.join(x, z) != top or lat.join(y, z) != top:
            continue
        if bottom in (x, y, z) or top in (x, y, z):
            continue
        out.append((bottom, x, y, z, top))
    return out


def classify_direct(lat: FiniteLattice) -> ClassificationReport:
    """Order-side oracle for the same seven flags.

    Modularity and distributivity are decided twice, by the defining laws and
    by forbidden-sublattice search; disagreement would be a bug and raises.
    """
    carrier = lat.carrier

    linear = Report([(x, y) for x, y in combinations(carrier, 2)
                     if not lat.le(x, y) and not lat.le(y, x)])
    bounded = Report(())  # construction computes both bounds
    complete = Report(())  # finite lattices are complete

    modular_bad = [(x, y, z) for x, y, z in product(carrier, repeat=3)
                   if lat.le(x, z)
                   and lat.join(x, lat.meet(y, z)) != lat.meet(lat.join(x, y), z)]
    pentagons = _find_pentagons(lat)
    if bool(modular_bad) != bool(pentagons):
        raise RuntimeError("modular law and pentagon search disagree")
    modular = Report(modular_bad)

    distributive_bad = [
        (x, y, z) for x, y, z in product(carrier, repeat=3)
        if lat.meet(x, lat.join(y, z)) != lat.join(lat.meet(x, y), lat.meet(x, z))]
    if bool(distributive_bad) != bool(pentagons or _find_diamonds(lat)):
        raise RuntimeError("distributive law and sublattice search disagree")
    distributive = Report(distributive_bad)

    completely_distributive = Report(complete.witnesses + distributive.witnesses)

    boolean_bad = list(distributive.witnesses)
    for x in carrier:
        if not any(lat.meet(x, y) == lat.bottom and lat.join(x, y) == lat.top
                   for y in carrier):
            boolean_bad.append(("complement", x))
    boolean = Report(boolean_bad)

    return ClassificationReport(
        linear=linear, bounded=bounded, complete=complete, modular=modular,
        distributive=distributive,
        completely_distributive=completely_distributive, boolean=boolean)


def distributive_reflection(lat: FiniteLattice) -> tuple[FiniteLattice, dict[str, str]]:
    """Antisymmetrise the lattice's betweenness and read the order back off
    the quotient at the image of the top element.

    The returned map sends each element to its class representative and
    preserves all meets and joins; any failure along the way means a bug in
    the pipeline and raises rather than returning something wrong.
    """
    rel = betweenness_from_lattice(lat)
    closed = antisymmetric_closure(rel)
    send = dict(closed.quotient.assignment)
    try:
        poset = recover_order(closed.relation, send[lat.top])
        reflected = FiniteLattice(poset)
    except DomainError as exc:
        raise RuntimeError(f"reflection failed to recover a lattice: {exc}") from exc
    for a, b in product(lat.carrier, repeat=2):
        if send[lat.meet(a, b)] != reflected.meet(send[a], send[b]) \
                or send[lat.join(a, b)] != reflected.join(send[a], send[b]):
            raise RuntimeError(
                f"reflection quotient fails to preserve meet/join at ({a!r}, {b!r})")
    return reflected, send


# --- Dedekind-MacNeille completion ------------------------------------------

def _upper(poset: FinitePoset, subset: frozenset[str]) -> frozenset[str]:
    return frozenset(u for u in poset.carrier
                     if all(poset.le(a, u) for a in subset))


def _lower(poset: FinitePoset, subset: frozenset[str]) -> frozenset[str]:
    return frozenset(l for l in poset.carrier
                     if all(poset.le(l, b) for b in subset))


def _cut_label(cut: frozenset[str]) -> str:
    return "{" + ",".join(sorted(cut)) + "}"


def dm_completion(poset: FinitePoset) -> tuple[FiniteLattice, dict[str, str]]:
    """The lattice of cuts (sets equal to the lower bounds of their upper
    bounds) ordered by inclusion, with the principal-downset embedding."""
    labels = list(poset.carrier)
    if len(labels) > SUBSET_GUARD:
        raise DomainError(f"carrier too large for the cut sweep (> {SUBSET_GUARD})")
    cuts = []
    for mask in range(2 ** len(labels)):
        subset = frozenset(labels[i] for i in range(len(labels)) if mask >> i & 1)
        if _lower(poset, _upper(poset, subset)) == subset:
            cuts.append(subset)
    names = {cut: _cut_label(cut) for cut in cuts}
    leq = {(names[a], names[b]) for a in cuts for b in cuts if a <= b}
    lattice = FiniteLattice(FinitePoset(names.values(), leq))
    embedding = {x: names[poset.down(x)] for x in poset.carrier}
    return lattice, embedding


def dm_betweenness_report(poset: FinitePoset) -> Report:
    """For each incomparable pair, the betweenness generated by the convex
    subsets must land, under the completion embedding, inside the completed
    lattice's interval.  Witnesses are (x, y, straying point)."""
    lattice, embed = dm_completion(poset)
    labels = list(poset.carrier)
    convex = []
    for mask in range(1, 2 ** len(labels)):
        subset = {labels[i] for i in range(len(labels)) if mask >> i & 1}
        if all(z in subset
               for a in subset for b in subset for z in labels
               if poset.le(a, z) and poset.le(z, b)):
            convex.append(subset)
    generated = relation_from_roads(RoadSystem(poset.carrier, convex))
    bad = []
    for x, y in combinations(poset.carrier, 2):
        if poset.le(x, y) or poset.le(y, x):
            continue
        lo = lattice.meet(embed[x], embed[y])
        hi = lattice.join(embed[x], embed[y])
        for z in interval(generated, x, y):
            if not (lattice.le(lo, embed[z]) and lattice.le(embed[z], hi)):
                bad.append((x, y, z))
    return Report(bad)


# --- JSON (de)serialisation -------------------------------------------------

def poset_to_json(poset: FinitePoset) -> dict:
    return {
        "elements": list(poset.carrier),
        "leq": [list(p) for p in sorted(poset.leq) if p[0] != p[1]],
    }


def poset_from_json(data: dict) -> FinitePoset:
    if not isinstance(data, dict) or "elements" not in data:
        raise DomainError("order document needs an 'elements' list")
    return poset_from_pairs(data["elements"],
                            [tuple(p) for p in data.get("leq", [])])


def lattice_to_json(lat: FiniteLattice) -> dict:
    return poset_to_json(lat.poset)


def lattice_from_json(data: dict) -> FiniteLattice:
    return FiniteLattice(poset_from_json(data))
