"""
Construtores de grafos elementares - grade 4-vizinhos, grafo regular aleatório
"""
import networkx as nx
import numpy as np

from gread.errors import GraphStructureError
from gread.graph.sparse import SparseGraph, from_edges


def grid_graph(width: int, height: int) -> SparseGraph:
    """Reticulado 4-vizinhos; o nó (x, y) tem índice y * width + x"""
    if width < 1 or height < 1:
        raise GraphStructureError(f"Dimensão de grade inválida: {width}x{height}")
    index = np.arange(width * height).reshape(height, width)
    horizontal = np.stack([index[:, :-1].ravel(), index[:, 1:].ravel()], axis=1)
    vertical = np.stack([index[:-1, :].ravel(), index[1:, :].ravel()], axis=1)
    return from_edges(width * height, np.concatenate([horizontal, vertical]))


def random_regular_graph(n_nodes: int, degree: int, seed: int) -> SparseGraph:
    if degree >= n_nodes or (n_nodes * degree) % 2:
        raise GraphStructureError(f"Grafo {degree}-regular impossível com {n_nodes} nós")
    g = nx.random_regular_graph(degree, n_nodes, seed=int(seed))
    edges = np.array(sorted(g.edges()), dtype=np.int64).reshape(-1, 2)
    return from_edges(n_nodes, edges)
