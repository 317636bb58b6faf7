# Graph module init
from gread.graph.sparse import (
    GraphKind, SparseGraph, from_edges, edge_list, n_undirected_edges, identity,
    validate_raw, symmetric_normalize, laplacian, spmm, sparse_square,
)
from gread.graph.dataset import (
    LabeledGraph, homophily_ratio, induced_subgraph, largest_connected_component, stratified_split,
)
from gread.graph.builders import grid_graph, random_regular_graph

__all__ = [
    'GraphKind',
    'SparseGraph',
    'from_edges',
    'edge_list',
    'n_undirected_edges',
    'identity',
    'validate_raw',
    'symmetric_normalize',
    'laplacian',
    'spmm',
    'sparse_square',
    'LabeledGraph',
    'homophily_ratio',
    'induced_subgraph',
    'largest_connected_component',
    'stratified_split',
    'grid_graph',
    'random_regular_graph',
]
