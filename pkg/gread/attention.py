"""
Adjacência suave - atenção por produto escalar escalado restrita às arestas do grafo (+ laços)
"""
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from gread.errors import ConfigError, DivergenceError, ShapeError
from gread.graph.sparse import GraphKind, SparseGraph

SCALES = ("sqrt", "linear")


@dataclass(frozen=True, eq=False)
class AttentionParams:
    w_key: np.ndarray
    w_query: np.ndarray

    def __post_init__(self):
        w_key = np.asarray(self.w_key, dtype=np.float64)
        w_query = np.asarray(self.w_query, dtype=np.float64)
        if w_key.ndim != 2 or w_key.shape != w_query.shape:
            raise ShapeError(f"Projeções W_K {w_key.shape} e W_Q {w_query.shape} incompatíveis")
        object.__setattr__(self, 'w_key', w_key)
        object.__setattr__(self, 'w_query', w_query)

    @property
    def d_k(self) -> int:
        return self.w_key.shape[1]


def score_scale(d_k: int, scale: str = "sqrt") -> float:
    if scale == "sqrt":
        return float(np.sqrt(d_k))
    if scale == "linear":
        return float(d_k)
    raise ConfigError(f"Escala de atenção desconhecida: {scale} (use {', '.join(SCALES)})")


def attention_pattern(g: SparseGraph) -> SparseGraph:
    """Padrão de A_raw com um laço por nó; valores 1"""
    if g.kind is not GraphKind.RAW:
        raise ConfigError(f"Atenção exige o grafo cru, recebido {g.kind.value}")
    pattern = sp.csr_matrix(g.matrix, copy=True)
    pattern = pattern + sp.identity(g.n_nodes, format='csr')
    pattern.data[:] = 1.0
    return SparseGraph(pattern, GraphKind.ROW_STOCHASTIC)


def edge_scores(p: AttentionParams, pattern: SparseGraph, h: np.ndarray, scale: str = "sqrt"):
    """s_ij = (W_K H_i)ᵀ (W_Q H_j) / escala, para cada entrada do padrão"""
    h = np.asarray(h, dtype=np.float64)
    if h.ndim != 2 or h.shape[0] != pattern.n_nodes:
        raise ShapeError(f"Embeddings {h.shape} para {pattern.n_nodes} nós")
    if h.shape[1] != p.w_key.shape[0]:
        raise ShapeError(f"Embeddings com {h.shape[1]} canais para W_K {p.w_key.shape}")
    keys = h @ p.w_key
    queries = h @ p.w_query
    scores = np.einsum('ij,ij->i', keys[pattern.rows], queries[pattern.cols]) / score_scale(p.d_k, scale)
    return scores, keys, queries


def row_softmax(pattern: SparseGraph, scores: np.ndarray) -> np.ndarray:
    if pattern.n_nodes == 0:
        return scores.copy()
    starts = pattern.matrix.indptr[:-1]
    counts = np.diff(pattern.matrix.indptr)
    maxes = np.maximum.reduceat(scores, starts)
    weights = np.exp(scores - np.repeat(maxes, counts))
    sums = np.add.reduceat(weights, starts)
    return weights / np.repeat(sums, counts)


def soft_adjacency(p: AttentionParams, g: SparseGraph, h: np.ndarray, scale: str = "sqrt") -> SparseGraph:
    """Ã estocástica por linha com o padrão de A_raw + I"""
    pattern = attention_pattern(g)
    scores, _, _ = edge_scores(p, pattern, h, scale)
    if not np.all(np.isfinite(scores)):
        raise DivergenceError(0, "scores de atenção não finitos")
    return pattern.with_values(row_softmax(pattern, scores), GraphKind.ROW_STOCHASTIC)


def soft_adjacency_vjp(p: AttentionParams, soft: SparseGraph, h: np.ndarray, d_values: np.ndarray,
                       scale: str = "sqrt"):
    """Retropropaga dL/dÃ (por entrada) até H, W_K e W_Q

    Retorna (dH, dW_K, dW_Q).
    """
    h = np.asarray(h, dtype=np.float64)
    weights = soft.values
    keys = h @ p.w_key
    queries = h @ p.w_query
    c = score_scale(p.d_k, scale)

    starts = soft.matrix.indptr[:-1]
    counts = np.diff(soft.matrix.indptr)
    row_dot = np.add.reduceat(weights * d_values, starts) if soft.n_nodes else np.zeros(0)
    d_scores = weights * (d_values - np.repeat(row_dot, counts))

    s = sp.csr_matrix((d_scores, soft.matrix.indices, soft.matrix.indptr), shape=soft.matrix.shape)
    d_keys = np.asarray(s @ queries) / c
    d_queries = np.asarray(s.T @ keys) / c

    d_h = d_keys @ p.w_key.T + d_queries @ p.w_query.T
    return d_h, h.T @ d_keys, h.T @ d_queries
