"""Monotone switching networks for directed s-t connectivity, with exact Fourier analysis on cuts."""
from __future__ import annotations

from .graph import Cut, DigraphInput, PathSpec, canonical_path, edge_crosses, enumerate_cuts, has_st_path
from .kset import KnowledgeSet, StateOfKnowledge, ck_step_valid, ks_contains, sok_step_valid, transitive_closure
from .network import (Label, NetEdge, SwitchingNetwork, VerificationReport, canonical_states, chain_network,
                      chain_transform, evaluate, export_dot, verify_solves)
from .knowledge import CKLabeling, build_savitch_network, validate_certain_knowledge
from .subsetwalk import Walk, build_subset_walk_graph, extract_knowledge_sequence
from .fourier import (CutFunction, FourierSpectrum, basis_e, dot, explicit_g, fourier_coeffs, inverse_fourier,
                      ks_to_function, solve_dual_prescription, sok_to_function)
from .certificates import (BMapping, Certificate, EdgePartition, barrier_set, build_barrier_mapping, build_gP,
                           decompose, edge_contribution, is_invariant_cut, is_invariant_function, partition_flow,
                           standard_partition, verify_certificate)
from .harness import (BoundReport, PathFamily, lower_bound_estimate, partition_code_family,
                      polynomial_path_family, savitch_size_table, state_network, verify_barrier)

__all__ = [
    "Cut",
    "DigraphInput",
    "PathSpec",
    "canonical_path",
    "edge_crosses",
    "enumerate_cuts",
    "has_st_path",
    "KnowledgeSet",
    "StateOfKnowledge",
    "ck_step_valid",
    "ks_contains",
    "sok_step_valid",
    "transitive_closure",
    "Label",
    "NetEdge",
    "SwitchingNetwork",
    "VerificationReport",
    "canonical_states",
    "chain_network",
    "chain_transform",
    "evaluate",
    "export_dot",
    "verify_solves",
    "CKLabeling",
    "build_savitch_network",
    "validate_certain_knowledge",
    "Walk",
    "build_subset_walk_graph",
    "extract_knowledge_sequence",
    "CutFunction",
    "FourierSpectrum",
    "basis_e",
    "dot",
    "explicit_g",
    "fourier_coeffs",
    "inverse_fourier",
    "ks_to_function",
    "solve_dual_prescription",
    "sok_to_function",
    "BMapping",
    "Certificate",
    "EdgePartition",
    "barrier_set",
    "decompose",
    "build_barrier_mapping",
    "build_gP",
    "edge_contribution",
    "is_invariant_cut",
    "is_invariant_function",
    "partition_flow",
    "standard_partition",
    "verify_certificate",
    "BoundReport",
    "PathFamily",
    "lower_bound_estimate",
    "partition_code_family",
    "polynomial_path_family",
    "savitch_size_table",
    "state_network",
    "verify_barrier",
]

__version__ = "0.1.0"
