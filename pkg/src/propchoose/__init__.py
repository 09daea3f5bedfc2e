"""Proportional choosability of complete multipartite graphs."""

__version__ = "0.1.0"

from .errors import InternalError, InvalidArgument, ResourceLimit
from .graph import Graph, complete_multipartite, induced_subgraph, max_degree, parse_graph
from .lists import ListAssignment, SupportMultiset, canonical_form, sample_assignment
from .solver import Verdict, chi_pc, decide_choosable, find_proportional, verify_proportional

__all__ = [
    "Graph",
    "InternalError",
    "InvalidArgument",
    "ListAssignment",
    "ResourceLimit",
    "SupportMultiset",
    "Verdict",
    "canonical_form",
    "chi_pc",
    "complete_multipartite",
    "decide_choosable",
    "find_proportional",
    "induced_subgraph",
    "max_degree",
    "parse_graph",
    "sample_assignment",
    "verify_proportional",
]
