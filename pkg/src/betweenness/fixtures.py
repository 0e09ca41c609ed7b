"""Shared fixtures: small betweenness relations and lattices used across the
test suite and handy at the REPL.

EX7 is a seven-point relation whose antisymmetric closure needs a glue step,
a transitivity step, and a second glue before it settles.  EX7_GLUED is the
six-point stage after the first glue (d1 and d2 identified, least label kept).
EX7_EXTENDED chains a primed copy onto EX7 through the x and c points, so the
second copy only starts collapsing once the first one has; it needs two full
alternation rounds.
"""

from __future__ import annotations

from .core import TernaryRelation, bottom_relation, mirror_closure
from .orderlat import FiniteLattice, poset_from_pairs


def _with_bottom(carrier, seeds) -> TernaryRelation:
    triples = set(bottom_relation(carrier).triples) | mirror_closure(seeds)
    return TernaryRelation(carrier, triples)


TRI = _with_bottom(
    ("a", "b", "c"),
    {("a", "b", "c"), ("a", "c", "b")})

EX7 = _with_bottom(
    ("a", "b", "c", "x", "d1", "d2", "y"),
    {("a", "b", "c"), ("a", "d1", "c"), ("b", "x", "d2"),
     ("y", "d1", "d2"), ("y", "d2", "d1"), ("a", "c", "x")})

EX7_GLUED = _with_bottom(
    ("a", "b", "c", "x", "d1", "y"),
    {("a", "b", "c"), ("a", "d1", "c"), ("b", "x", "d1"), ("a", "c", "x")})

EX7_EXTENDED = _with_bottom(
    ("a", "b", "c", "x", "d1", "d2", "y",
     "a'", "b'", "c'", "x'", "d'1", "d'2"),
    {("a", "b", "c"), ("a", "d1", "c"), ("b", "x", "d2"),
     ("y", "d1", "d2"), ("y", "d2", "d1"), ("a", "c", "x"),
     ("a'", "b'", "c'"), ("a'", "d'1", "c'"), ("b'", "x'", "d'2"),
     ("a'", "c'", "d'2"), ("a'", "c'", "x'"),
     ("x", "d'1", "d'2"), ("c", "d'2", "d'1")})


def _lattice(carrier, covers) -> FiniteLattice:
    return FiniteLattice(poset_from_pairs(carrier, covers))


C3 = _lattice(("0", "1", "2"), [("0", "1"), ("1", "2")])

B4 = _lattice(("0", "p", "q", "1"),
              [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])

N5 = _lattice(("0", "a", "b", "c", "1"),
              [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])

M3 = _lattice(("0", "x", "y", "z", "1"),
              [("0", "x"), ("0", "y"), ("0", "z"),
               ("x", "1"), ("y", "1"), ("z", "1")])
