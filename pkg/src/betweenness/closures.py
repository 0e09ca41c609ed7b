"""Closure operators that enrich a relation into successive axiom classes.

Each operator adds the least amount needed for its axiom: l12 adds the base
triples and mirrors (R1, R2), l3 quotients out the minimality glue (R3), l4
iterates intervals until transitivity holds (R4), r_closure chains all three,
and the antisymmetrising closure alternates gluing with l4 until the quotient
is an antisymmetric relation satisfying all four axioms.

Quotient-producing operators return a ClosureResult carrying the output
relation, the quotient map from the input carrier, and a trace of
(step name, carrier size, triple count) entries.  Traces list the steps that
changed something; the alternating closure ends with one "identity" entry for
the round that confirmed the fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .axioms import check_axiom
from .core import (DomainError, Partition, RelMap, TernaryRelation, compose,
                   mirror_closure, quotient_relation)

MINIMALITY = "MINIMALITY"
ANTISYMMETRY = "ANTISYMMETRY"

TraceEntry = tuple[str, int, int]


@dataclass(frozen=True)
class ClosureResult:
    relation: TernaryRelation
    quotient: RelMap
    trace: tuple[TraceEntry, ...]

    def __init__(self, relation, quotient, trace):
        object.__setattr__(self, "relation", relation)
        object.__setattr__(self, "quotient", quotient)
        object.__setattr__(self, "trace", tuple(tuple(t) for t in trace))


class UnionFind:
    """Disjoint sets over string labels; the root is the least label, so
    representatives are deterministic."""

    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def to_partition(self, carrier: Iterable[str]) -> Partition:
        blocks: dict[str, list[str]] = {}
        for x in carrier:
            blocks.setdefault(self.find(x), []).append(x)
        return Partition(carrier, blocks.values())


def l12(rel: TernaryRelation) -> TernaryRelation:
    """Least superset with the base triples and mirror symmetry (R1, R2)."""
    triples = mirror_closure(rel.triples)
    for a in rel.carrier:
        for b in rel.carrier:
            triples.add((a, b, b))
            triples.add((b, b, a))
    return rel.with_triples(triples)


def _minimality_fixpoint(rel: TernaryRelation) -> UnionFind:
    uf = UnionFind(rel.carrier)
    triples = rel.sorted_triples()
    changed = True
    while changed:
        changed = False
        for (r, s, t) in triples:
            if uf.find(r) == uf.find(t):
                if uf.union(r, s) or uf.union(s, t):
                    changed = True
    return uf


def _antisymmetry_fixpoint(rel: TernaryRelation) -> UnionFind:
    # The glue rule is evaluated modulo the current partition and re-swept on
    # the induced quotient triples, so a single pass of the resulting
    # partition already leaves an antisymmetric quotient.
    uf = UnionFind(rel.carrier)
    while True:
        quotient = {(uf.find(a), uf.find(b), uf.find(c)) for (a, b, c) in rel.triples}
        for (a, b, c) in sorted(quotient):
            if b != c and (a, c, b) in quotient:
                uf.union(b, c)
                break
        else:
            return uf


def sim_partition(rel: TernaryRelation, rule: str) -> Partition:
    """Fixpoint partition of a glue rule.

    MINIMALITY: a triple (r,s,t) with r and t already equivalent pulls r, s, t
    into one class.  ANTISYMMETRY: equivalent-up-to-partition triples
    (a,b,c) and (a,c,b) pull b and c into one class.
    """
    if rule == MINIMALITY:
        uf = _minimality_fixpoint(rel)
    elif rule == ANTISYMMETRY:
        uf = _antisymmetry_fixpoint(rel)
    else:
        raise DomainError(f"unknown glue rule {rule!r}")
    return uf.to_partition(rel.carrier)


def l3(rel: TernaryRelation) -> ClosureResult:
    """Quotient by the minimality glue; the result satisfies R3 and keeps
    R1 and R2."""
    quotient, qmap = quotient_relation(rel, sim_partition(rel, MINIMALITY))
    trace = [("L3", len(quotient.carrier), len(quotient.triples))]
    return ClosureResult(quotient, qmap, trace)


def l4(rel: TernaryRelation) -> TernaryRelation:
    """Relation generated by iterating intervals to their fixpoint.

    Grow every interval by the rule "[a,b] absorbs [c,d] whenever c and d both
    lie in [a,b]", all pairs advancing together each round, and read the
    relation back off the stabilised intervals.
    """
    intervals = {}
    for a in rel.carrier:
        for b in rel.carrier:
            intervals[(a, b)] = {w for w in rel.carrier if (a, w, b) in rel.triples}
    changed = True
    while changed:
        changed = False
        grown = {}
        for pair, current in intervals.items():
            new = set(current)
            for c, d in product(current, repeat=2):
                new |= intervals[(c, d)]
            grown[pair] = new
            if new != current:
                changed = True
        intervals = grown
    triples = {(a, w, b) for (a, b), members in intervals.items() for w in members}
    return rel.with_triples(triples)


def r_closure(rel: TernaryRelation) -> ClosureResult:
    """The full closure into the four-axiom class: l12, then l3, then l4.

    The l4 stage never reintroduces an R3 violation, so one pass suffices.
    """
    base = l12(rel)
    step3 = l3(base)
    final = l4(step3.relation)
    result = ClosureResult(
        final,
        RelMap(rel, final, step3.quotient.assignment),
        [
            ("L12", len(base.carrier), len(base.triples)),
            ("L3", len(step3.relation.carrier), len(step3.relation.triples)),
            ("L4", len(final.carrier), len(final.triples)),
        ],
    )
    return result


def antisym_step(rel: TernaryRelation) -> ClosureResult:
    """One antisymmetrising quotient (the gluing half of the alternation)."""
    quotient, qmap = quotient_relation(rel, sim_partition(rel, ANTISYMMETRY))
    trace = [("L_A", len(quotient.carrier), len(quotient.triples))]
    return ClosureResult(quotient, qmap, trace)


def antisymmetric_closure(rel: TernaryRelation) -> ClosureResult:
    """Alternate antisym_step and l4 until both are identities.

    The input must satisfy R1 through R3 (transitivity is not required: the
    alternation restores it, and only terminates once it holds).  The output
    is an antisymmetric relation satisfying all four axioms.
    """
    for ax in ("R1", "R2", "R3"):
        report = check_axiom(rel, ax)
        if not report.holds:
            raise DomainError(f"input fails {ax}, witness {report.witnesses[0]}")
    current = rel
    qmap = RelMap.identity(rel)
    trace: list[TraceEntry] = []
    while True:
        progressed = False
        step = antisym_step(current)
        if len(step.relation.carrier) < len(current.carrier):
            qmap = compose(step.quotient, qmap)
            current = step.relation
            trace.append(step.trace[0])
            progressed = True
        widened = l4(current)
        if widened.triples != current.triples:
            qmap = RelMap(qmap.source, widened, qmap.assignment)
            current = widened
            trace.append(("L4", len(current.carrier), len(current.triples)))
            progressed = True
        if not progressed:
            trace.append(("identity", len(current.carrier), len(current.triples)))
            return ClosureResult(current, qmap, trace)


def closure_result_to_json(result: ClosureResult) -> dict:
    from .core import relation_to_json

    return {
        "relation": relation_to_json(result.relation),
        "quotient": {"map": dict(result.quotient.assignment)},
        "trace": [
            {"step": step, "carrier": carrier, "triples": triples}
            for (step, carrier, triples) in result.trace
        ],
    }
