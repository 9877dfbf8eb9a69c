"""HF+ of plumbed three-manifolds from characteristic vectors.

The main entry points are :func:`parse_graph`, :func:`intersection_form`,
:func:`hf_summary` and :func:`d_invariant`; ``plumbhf.catalog`` has the
standard example graphs.
"""
from .dcomb import (ClassRecord, ClassTable, LeveledVector, build_classes, ker_u_pow_ranks,
                    relation_neighbors, u_shift)
from .errors import (BudgetExceeded, DegenerateFormError, DomainError, GraphInputError,
                     HypothesisError, PlumbError, ResourceError, StabilizationError,
                     UnsoundRequest)
from .fullpath import PathResult, ker_u_generators, path_step, run_full_path
from .graph import (GraphReport, IntersectionForm, PlumbingGraph, analyze, blow_down_pair,
                    intersection_form, parse_graph, seifert_to_star)
from .lattice import (SpinCClass, add_2pd, enumerate_box, enumerate_initial_box,
                      enumerate_spinc, grade, square, spinc_of)
from .module import (FiniteSummand, GradedModule, HFSummary, assemble, d_invariant,
                     hf_summary, short_vector_count, verify_blowdown)

__all__ = [
    "ClassRecord", "ClassTable", "LeveledVector", "build_classes", "ker_u_pow_ranks",
    "relation_neighbors", "u_shift", "BudgetExceeded", "DegenerateFormError", "DomainError",
    "GraphInputError", "HypothesisError", "PlumbError", "ResourceError", "StabilizationError",
    "UnsoundRequest", "PathResult", "ker_u_generators", "path_step", "run_full_path",
    "GraphReport", "IntersectionForm", "PlumbingGraph", "analyze", "blow_down_pair",
    "intersection_form", "parse_graph", "seifert_to_star", "SpinCClass", "add_2pd",
    "enumerate_box", "enumerate_initial_box", "enumerate_spinc", "grade", "square", "spinc_of",
    "FiniteSummand", "GradedModule", "HFSummary", "assemble", "d_invariant", "hf_summary",
    "short_vector_count", "verify_blowdown",
]

__version__ = "0.1.0"
