"""Finite betweenness relations: axioms, closures, the lattice of relations
on a carrier, translation to and from finite lattices, and amalgamation."""

from .axioms import AXIOMS, R_AXIOMS, check_axiom, is_r_relation
from .closures import (ANTISYMMETRY, MINIMALITY, ClosureResult, antisym_step,
                       antisymmetric_closure, closure_result_to_json, l3, l4,
                       l12, r_closure, sim_partition)
from .core import (AxiomReport, DomainError, Partition, RelMap, Report,
                   TernaryRelation, bottom_relation, compose, dump_relation,
                   interval, is_monotone, load_relation, make_carrier,
                   mirror_closure, quotient_relation, relation_from_json,
                   relation_to_json, top_relation)
from .fixtures import B4, C3, EX7, EX7_EXTENDED, EX7_GLUED, M3, N5, TRI
from .fraisse import (Amalgam, AmalgamationError, ChainReport, StrongEmbedding,
                      amalgamate, audit_extension_property, canonical_form,
                      check_partial_homogeneity, extends_inclusion,
                      find_embeddings, fraisse_chain, induced, jep,
                      one_point_extensions)
from .orderlat import (BoundWitness, ClassificationReport, FiniteLattice,
                       FinitePoset, betweenness_from_lattice, classify_direct,
                       classify_via_betweenness, detect_bounds, dm_completion,
                       dm_betweenness_report, distributive_reflection,
                       lattice_from_json, lattice_to_json, poset_from_json,
                       poset_from_pairs, poset_to_json, recover_order)
from .rlattice import (ALL_R, ANTISYM_R, R3_ONLY, Cone, enumerate_relations,
                       initial_lift, join, meet, pullback)
from .roads import (RoadSystem, intervals_as_roads, relation_from_roads,
                    road_system_from_json, road_system_to_json,
                    validate_road_system)

__all__ = [name for name in dir() if not name.startswith("_")]
