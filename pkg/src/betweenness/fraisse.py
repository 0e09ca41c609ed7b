"""Embeddings, amalgamation, and chain construction for finite betweenness
structures.

"Substructure" always means induced substructure: an embedding must preserve
and reflect triples.  The free joint embedding and free amalgam (union of
triples over a shared part, padded with degenerate triples) stay inside the
class; should a free amalgam ever fail an axiom, the closure fallback runs
and the embeddings are re-checked rather than trusted.

fraisse_chain grows a structure round by round, satisfying one-point
extension requests; audit_extension_property and check_partial_homogeneity
measure how close a finite stage is to the (infinite) limit it approximates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from random import Random
from typing import Iterable, Sequence

from .axioms import is_r_relation
from .closures import r_closure
from .core import DomainError, RelMap, Report, TernaryRelation
from .rlattice import enumerate_relations

CANONICAL_GUARD = 8


class AmalgamationError(RuntimeError):
    """The free amalgam needed a closure step that destroyed an embedding."""


@dataclass(frozen=True, eq=False)
class StrongEmbedding:
    """An injective map that preserves and reflects triples."""

    map: RelMap

    def __init__(self, source: TernaryRelation, target: TernaryRelation,
                 assignment: dict[str, str]):
        relmap = RelMap(source, target, assignment)
        values = list(relmap.assignment.values())
        if len(set(values)) != len(values):
            raise DomainError("embedding is not injective")
        for a in source.carrier:
            for b in source.carrier:
                for c in source.carrier:
                    if ((a, b, c) in source) != (relmap.image_triple((a, b, c)) in target):
                        raise DomainError(
                            f"map is not strong at ({a!r}, {b!r}, {c!r})")
        object.__setattr__(self, "map", relmap)

    @property
    def source(self) -> TernaryRelation:
        return self.map.source

    @property
    def target(self) -> TernaryRelation:
        return self.map.target

    @property
    def assignment(self) -> dict[str, str]:
        return self.map.assignment

    def __call__(self, label: str) -> str:
        return self.map(label)

    @staticmethod
    def inclusion(source: TernaryRelation, target: TernaryRelation) -> "StrongEmbedding":
        return StrongEmbedding(source, target, {x: x for x in source.carrier})


@dataclass(frozen=True, eq=False)
class Amalgam:
    result: TernaryRelation
    g1: StrongEmbedding
    g2: StrongEmbedding


@dataclass(frozen=True, eq=False)
class ChainReport:
    stages: tuple[TernaryRelation, ...]
    links: tuple[StrongEmbedding, ...]
    satisfied_requests: tuple[tuple[TernaryRelation, TernaryRelation], ...]
    pending_requests: tuple[tuple[TernaryRelation, TernaryRelation], ...]

    @property
    def last(self) -> TernaryRelation:
        return self.stages[-1]


def induced(rel: TernaryRelation, labels: Iterable[str]) -> TernaryRelation:
    """The substructure on the given labels, with exactly the triples of rel
    that stay inside them."""
    keep = set(labels)
    for x in keep:
        if x not in rel.carrier:
            raise DomainError(f"label {x!r} not in the carrier")
    return TernaryRelation(
        keep, (t for t in rel.triples if set(t) <= keep))


def find_embeddings(small: TernaryRelation,
                    big: TernaryRelation) -> list[StrongEmbedding]:
    """All strong embeddings of small into big, by backtracking."""
    order = list(small.carrier)
    found: list[StrongEmbedding] = []

    def consistent(partial: dict[str, str]) -> bool:
        for a in partial:
            for b in partial:
                for c in partial:
                    image = (partial[a], partial[b], partial[c])
                    if ((a, b, c) in small) != (image in big):
                        return False
        return True

    def extend(i: int, partial: dict[str, str], used: set[str]) -> None:
        if i == len(order):
            found.append(StrongEmbedding(small, big, dict(partial)))
            return
        x = order[i]
        for y in big.carrier:
            if y in used:
                continue
            partial[x] = y
            if consistent(partial):
                extend(i + 1, partial, used | {y})
            del partial[x]

    extend(0, {}, set())
    return found


def extends_inclusion(sub: TernaryRelation, extension: TernaryRelation,
                      big: TernaryRelation) -> StrongEmbedding | None:
    """An embedding of extension into big that is the identity on sub's
    labels, or None.  extension's carrier must contain sub's."""
    fresh = [x for x in extension.carrier if x not in sub.carrier]
    base = {x: x for x in sub.carrier}
    if len(fresh) != len(extension.carrier) - len(sub.carrier):
        raise DomainError("extension does not contain the substructure")

    def try_candidates(i: int, partial: dict[str, str]) -> StrongEmbedding | None:
        if i == len(fresh):
            try:
                return StrongEmbedding(extension, big, dict(partial))
            except DomainError:
                return None
        for y in big.carrier:
            if y in partial.values():
                continue
            partial[fresh[i]] = y
            hit = try_candidates(i + 1, partial)
            if hit is not None:
                return hit
            del partial[fresh[i]]
        return None

    for x in sub.carrier:
        if x not in big.carrier:
            raise DomainError(f"label {x!r} not in the ambient carrier")
    return try_candidates(0, dict(base))


@lru_cache(maxsize=4096)
def canonical_form(rel: TernaryRelation) -> TernaryRelation:
    """The lexicographically least relabeling onto "0".."n-1"; two relations
    are isomorphic exactly when their canonical forms are equal."""
    n = len(rel.carrier)
    if n > CANONICAL_GUARD:
        raise DomainError(f"carrier too large to canonicalise (> {CANONICAL_GUARD})")
    targets = tuple(str(i) for i in range(n))
    best = None
    for perm in permutations(targets):
        send = dict(zip(rel.carrier, perm))
        triples = tuple(sorted((send[a], send[b], send[c])
                               for (a, b, c) in rel.triples))
        if best is None or triples < best:
            best = triples
    return TernaryRelation(targets, best or ())


def _fresh_name(taken: set[str], base: str) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def _bottom_pad(carrier: Sequence[str]) -> set[tuple[str, str, str]]:
    return {(a, b, b) for a in carrier for b in carrier} \
        | {(b, b, a) for a in carrier for b in carrier}


def jep(u: TernaryRelation, v: TernaryRelation) -> tuple[TernaryRelation, StrongEmbedding, StrongEmbedding]:
    """Free joint embedding: disjoint carriers side by side, no new
    non-degenerate triples."""
    for rel in (u, v):
        if not is_r_relation(rel):
            raise DomainError("joint embedding needs four-axiom relations")
    taken = set(u.carrier)
    rename = {}
    for y in v.carrier:
        rename[y] = _fresh_name(taken, y)
        taken.add(rename[y])
    triples = set(u.triples) | {(rename[a], rename[b], rename[c])
                                for (a, b, c) in v.triples}
    triples |= _bottom_pad(sorted(taken))
    w = TernaryRelation(taken, triples)
    if not is_r_relation(w):
        raise RuntimeError("free joint embedding left the class")
    e1 = StrongEmbedding(u, w, {x: x for x in u.carrier})
    e2 = StrongEmbedding(v, w, rename)
    return w, e1, e2


def amalgamate(a: TernaryRelation, b1: TernaryRelation, b2: TernaryRelation,
               f1: RelMap, f2: RelMap) -> Amalgam:
    """Free amalgam of b1 and b2 over a: glue along the two images of a,
    keep both triple sets, pad with degenerate triples.

    If the free construction fails an axiom (none is expected to), the
    closure is applied and both embeddings re-validated; losing one raises
    AmalgamationError instead of returning a non-amalgam.
    """
    emb1 = StrongEmbedding(a, b1, f1.assignment)
    emb2 = StrongEmbedding(a, b2, f2.assignment)
    shared = {emb2(x): emb1(x) for x in a.carrier}
    taken = set(b1.carrier)
    send2 = {}
    for y in b2.carrier:
        if y in shared:
            send2[y] = shared[y]
        else:
            send2[y] = _fresh_name(taken, y)
            taken.add(send2[y])
    triples = set(b1.triples) | {(send2[p], send2[q], send2[r])
                                 for (p, q, r) in b2.triples}
    triples |= _bottom_pad(sorted(taken))
    free = TernaryRelation(taken, triples)
    result = free if is_r_relation(free) else r_closure(free).relation
    try:
        g1 = StrongEmbedding(b1, result, {x: x for x in b1.carrier})
        g2 = StrongEmbedding(b2, result, send2)
    except DomainError as exc:
        raise AmalgamationError(
            f"closure broke an embedding into the amalgam: {exc}") from exc
    return Amalgam(result, g1, g2)


# --- one-point extension types ----------------------------------------------

def _positional(rel: TernaryRelation) -> tuple[TernaryRelation, dict[str, str]]:
    """Relabel onto "0".."n-1" following sorted label order (not canonical)."""
    send = {x: str(i) for i, x in enumerate(rel.carrier)}
    out = TernaryRelation(send.values(),
                          ((send[a], send[b], send[c]) for (a, b, c) in rel.triples))
    return out, {v: k for k, v in send.items()}


@lru_cache(maxsize=256)
def _extension_types_positional(rel: TernaryRelation) -> tuple[TernaryRelation, ...]:
    """All one-point extensions of a positionally-labelled relation, as
    relations on "0".."n" restricting to it on "0".."n-1"."""
    n = len(rel.carrier)
    carrier = tuple(str(i) for i in range(n + 1))
    old = set(rel.carrier)
    out = []
    for candidate in enumerate_relations(carrier):
        restricted = {t for t in candidate.triples if set(t) <= old}
        if restricted == set(rel.triples):
            out.append(candidate)
    return tuple(out)


def one_point_extensions(rel: TernaryRelation,
                         fresh: str) -> list[tuple[TernaryRelation, StrongEmbedding]]:
    """Every way to add one point named fresh to rel, each with the inclusion
    of rel into it."""
    if fresh in rel.carrier:
        raise DomainError(f"fresh label {fresh!r} already in the carrier")
    positional, back = _positional(rel)
    back = dict(back)
    back[str(len(rel.carrier))] = fresh
    out = []
    for vtype in _extension_types_positional(positional):
        ext = TernaryRelation(
            back.values(),
            ((back[a], back[b], back[c]) for (a, b, c) in vtype.triples))
        out.append((ext, StrongEmbedding.inclusion(rel, ext)))
    return out


# --- chain construction and its audits ---------------------------------------

def _round_requests(stage: TernaryRelation, size_bound: int,
                    fresh: str) -> list[tuple[TernaryRelation, TernaryRelation]]:
    requests = []
    labels = list(stage.carrier)
    for size in range(0, size_bound):
        if size > len(labels):
            break
        for subset in combinations(labels, size):
            sub = induced(stage, subset)
            for ext, _ in one_point_extensions(sub, fresh):
                requests.append((sub, ext))
    return requests


def fraisse_chain(size_bound: int, rounds: int, seed: int) -> ChainReport:
    """Grow from a single point, satisfying every one-point extension request
    of bounded size round by round.

    Each round lists the requests against the round's starting stage and
    works through them in seeded order; a request already realised in the
    growing structure is recorded without growing it, the rest are satisfied
    by amalgamation with a fresh point.
    """
    if not 1 <= size_bound <= 4:
        raise DomainError("size_bound must be between 1 and 4")
    if rounds < 1:
        raise DomainError("rounds must be at least 1")
    rng = Random(seed)
    counter = 1
    current = TernaryRelation(("n0",), _bottom_pad(("n0",)))
    stages = [current]
    links: list[StrongEmbedding] = []
    satisfied: list[tuple[TernaryRelation, TernaryRelation]] = []
    for _ in range(rounds):
        working = current
        requests = _round_requests(current, size_bound, fresh=f"n{counter}")
        rng.shuffle(requests)
        for sub, ext_template in requests:
            fresh = f"n{counter}"
            # retarget the template's fresh point at the current counter
            old_fresh = next(x for x in ext_template.carrier
                             if x not in sub.carrier)
            rename = {x: x for x in sub.carrier}
            rename[old_fresh] = fresh
            ext = TernaryRelation(
                rename.values(),
                ((rename[p], rename[q], rename[r]) for (p, q, r) in ext_template.triples))
            if extends_inclusion(sub, ext, working) is not None:
                satisfied.append((sub, ext))
                continue
            glued = amalgamate(
                sub, working, ext,
                RelMap(sub, working, {x: x for x in sub.carrier}),
                RelMap(sub, ext, {x: x for x in sub.carrier}))
            working = glued.result
            counter += 1
            if extends_inclusion(sub, ext, working) is None:
                raise RuntimeError("amalgamation failed to realise its request")
            satisfied.append((sub, ext))
        links.append(StrongEmbedding.inclusion(current, working))
        current = working
        stages.append(current)
    pending = audit_extension_property(current, size_bound).witnesses
    return ChainReport(tuple(stages), tuple(links), tuple(satisfied),
                       tuple(pending))


def audit_extension_property(rel: TernaryRelation, k: int) -> Report:
    """For every induced substructure with fewer than k points and every
    one-point extension of it, check the extension is realised over that
    substructure; witnesses are the unmet (substructure, extension) pairs."""
    if k > 4:
        raise DomainError("extension audit is guarded at k <= 4")
    if not is_r_relation(rel):
        raise DomainError("extension audit needs a four-axiom relation")
    fresh = _fresh_name(set(rel.carrier), "z")
    unmet = []
    for sub, ext in _round_requests(rel, k, fresh):
        if extends_inclusion(sub, ext, rel) is None:
            unmet.append((sub, ext))
    return Report(unmet)


def check_partial_homogeneity(rel: TernaryRelation, k: int) -> Report:
    """One back-and-forth step: every isomorphism between induced
    substructures of size at most k must extend by any one more point.
    Witnesses are (assignment items, unmatched point)."""
    if k > 3:
        raise DomainError("homogeneity check is guarded at k <= 3")
    if len(rel.carrier) > 12:
        raise DomainError("homogeneity check is guarded at 12 points")
    if not is_r_relation(rel):
        raise DomainError("homogeneity check needs a four-axiom relation")
    failures = []
    labels = list(rel.carrier)
    for size in range(0, min(k, len(labels)) + 1):
        for src in combinations(labels, size):
            sub_src = induced(rel, src)
            for dst in combinations(labels, size):
                sub_dst = induced(rel, dst)
                for emb in find_embeddings(sub_src, sub_dst):
                    for a in labels:
                        if a in src:
                            continue
                        if not _one_step(rel, emb.assignment, a):
                            failures.append(
                                (tuple(sorted(emb.assignment.items())), a))
    return Report(failures)


def _one_step(rel: TernaryRelation, assignment: dict[str, str], a: str) -> bool:
    src = list(assignment) + [a]
    sub = induced(rel, src)
    for b in rel.carrier:
        if b in assignment.values():
            continue
        try:
            StrongEmbedding(sub, rel, {**assignment, a: b})
            return True
        except DomainError:
            continue
    return False
