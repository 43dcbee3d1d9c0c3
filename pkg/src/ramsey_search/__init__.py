"""Search and verification tools for Ramsey lower-bound colorings."""
from .cliques import Verdict, bad_edge_set, count_all, count_cliques, recount_delta, verify
from .coloring import ColoringVector, EdgeColoring, Shape, expand, vector_length
from .constructors import cubic, paley, split, tile
from .search import SearchConfig, SearchResult, anneal_search, tabu_search

__all__ = [
    "ColoringVector", "EdgeColoring", "SearchConfig", "SearchResult", "Shape", "Verdict",
    "anneal_search", "bad_edge_set", "count_all", "count_cliques", "cubic", "expand", "paley",
    "recount_delta", "split", "tabu_search", "tile", "vector_length", "verify",
]
