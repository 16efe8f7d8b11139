"""Chromatic symmetric functions of hypergraphs in the fundamental quasisymmetric basis."""

from .chromatic import (
    corollary_f_expansion,
    cstd,
    generalized_f_expansion,
    h_descents,
    oracle_f_expansion,
    oracle_m_expansion,
    oracle_p_expansion,
    single_edge_f_expansion,
    theorem_f_expansion,
    verify,
)
from .hypergraph import Hypergraph, Hypertree, classify, random_hypertree
from .partition_search import PartitionAssignment, search_assignment, verify_assignment
from .qsym import QSymF, QSymM, SymExpansion

__version__ = "0.1.0"
