"""Subgraph matching with on-the-fly dead-end pattern pruning.

Enumerates all isomorphic embeddings of a labeled query graph in a labeled
data graph by backtracking.  The guarded engine learns from every failed
subtree: it records a minimal failing sub-pattern and prunes any later
partial embedding that contains one, with a constant-time match check.
"""

from .candidates import (
    CandidateSets,
    DisconnectedQueryError,
    MatchingOrder,
    choose_order,
    label_filter,
    refine,
)
from .deadend import DeadEndRecord, DeadEndTable, EmbeddingIdTrack
from .embedding import PartialEmbedding
from .graphs import (
    GraphFormatError,
    LabeledGraph,
    LabelTable,
    build_graph,
    parse_graph,
    serialize_graph,
)
from .search import (
    SearchOutcome,
    SearchStats,
    aggregate_masks,
    guarded_search,
    mask_empty_candidate,
    mask_noninjective,
    naive_search,
    verify_embedding,
)
from .workload import (
    EquivalenceError,
    QueryResult,
    QuerySetReport,
    QuerySpec,
    WalkBudgetError,
    pathology_family,
    random_walk_query,
    run_query_set,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateSets",
    "DeadEndRecord",
    "DeadEndTable",
    "DisconnectedQueryError",
    "EmbeddingIdTrack",
    "EquivalenceError",
    "GraphFormatError",
    "LabelTable",
    "LabeledGraph",
    "MatchingOrder",
    "PartialEmbedding",
    "QueryResult",
    "QuerySetReport",
    "QuerySpec",
    "SearchOutcome",
    "SearchStats",
    "WalkBudgetError",
    "aggregate_masks",
    "build_graph",
    "choose_order",
    "guarded_search",
    "label_filter",
    "mask_empty_candidate",
    "mask_noninjective",
    "naive_search",
    "parse_graph",
    "pathology_family",
    "random_walk_query",
    "refine",
    "run_query_set",
    "serialize_graph",
    "verify_embedding",
]
