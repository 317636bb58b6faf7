"""
Grafo esparso - SparseGraph, normalização simétrica, Laplaciano, produtos esparsos
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from gread.errors import GraphStructureError, ShapeError

STRUCTURAL_ZERO = 1e-15


class GraphKind(Enum):
    RAW = "Raw"
    SYM_NORMALIZED = "SymNormalized"
    LAPLACIAN = "Laplacian"
    ROW_STOCHASTIC = "RowStochastic"


NORMALIZED_KINDS = (GraphKind.SYM_NORMALIZED, GraphKind.ROW_STOCHASTIC)


def _canonical(matrix) -> sp.csr_matrix:
    csr = sp.csr_matrix(matrix, dtype=np.float64)
    csr.sum_duplicates()
    csr.sort_indices()
    return csr


@dataclass(frozen=True, eq=False)
class SparseGraph:
    """Matriz esparsa quadrada em CSR com o papel que ela cumpre (cru, normalizada, Laplaciano...)

    Imutável depois de construída: os índices ficam ordenados por coluna dentro de cada
    linha, o que fixa a ordem das somas em spmm.
    """
    matrix: sp.csr_matrix
    kind: GraphKind

    def __post_init__(self):
        rows, cols = self.matrix.shape
        if rows != cols:
            raise ShapeError(f"Matriz não quadrada: {rows}x{cols}")
        object.__setattr__(self, 'matrix', _canonical(self.matrix))

    @property
    def n_nodes(self) -> int:
        return self.matrix.shape[0]

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    @cached_property
    def rows(self) -> np.ndarray:
        """Índice de linha de cada entrada armazenada (mesma ordem de `matrix.data`)"""
        return np.repeat(np.arange(self.n_nodes), np.diff(self.matrix.indptr))

    @property
    def cols(self) -> np.ndarray:
        return self.matrix.indices

    @property
    def values(self) -> np.ndarray:
        return self.matrix.data

    def degrees(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=1)).ravel()

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def with_values(self, values, kind=None) -> "SparseGraph":
        """Mesmo padrão de esparsidade com novos valores"""
        values = np.asarray(values, dtype=np.float64)
        if values.shape != self.matrix.data.shape:
            raise ShapeError(f"Esperados {self.nnz} valores, recebidos {values.shape}")
        matrix = sp.csr_matrix((values, self.matrix.indices.copy(), self.matrix.indptr.copy()),
                               shape=self.matrix.shape)
        return SparseGraph(matrix, kind or self.kind)


def from_edges(n_nodes: int, edges) -> SparseGraph:
    """Grafo cru simétrico a partir de pares (src, dst)

    As arestas são simetrizadas (união das duas direções), duplicatas colapsam para peso 1
    e laços (i, i) são descartados.
    """
    if n_nodes < 0:
        raise GraphStructureError(f"Número de nós inválido: {n_nodes}")
    pairs = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if pairs.size and (pairs.min() < 0 or pairs.max() >= n_nodes):
        bad = pairs[(pairs < 0) | (pairs >= n_nodes)][0]
        raise GraphStructureError(f"Nó {int(bad)} fora do intervalo [0, {n_nodes})")
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    src = np.concatenate([pairs[:, 0], pairs[:, 1]])
    dst = np.concatenate([pairs[:, 1], pairs[:, 0]])
    matrix = sp.csr_matrix((np.ones(src.shape[0]), (src, dst)), shape=(n_nodes, n_nodes))
    matrix.sum_duplicates()
    matrix.data[:] = 1.0
    return SparseGraph(matrix, GraphKind.RAW)


def edge_list(g: SparseGraph) -> np.ndarray:
    """Pares (i, j) com i < j de um grafo cru, em ordem de linha"""
    upper = g.rows < g.cols
    return np.stack([g.rows[upper], g.cols[upper]], axis=1)


def n_undirected_edges(g: SparseGraph) -> int:
    return int(np.count_nonzero(g.rows < g.cols))


def identity(n_nodes: int, kind=GraphKind.SYM_NORMALIZED) -> SparseGraph:
    return SparseGraph(sp.identity(n_nodes, format='csr'), kind)


def validate_raw(g: SparseGraph) -> None:
    if g.kind is not GraphKind.RAW:
        raise GraphStructureError(f"Esperado grafo Raw, recebido {g.kind.value}")
    if np.any(g.values < 0):
        raise GraphStructureError("Grafo cru com pesos negativos")
    if np.any(g.values != 1.0):
        raise GraphStructureError("Grafo cru deve ter pesos 0/1")
    if np.any(g.matrix.diagonal() != 0):
        raise GraphStructureError("Grafo cru com laços na diagonal")
    if (g.matrix != g.matrix.T).nnz:
        raise GraphStructureError("Grafo cru não simétrico")


def symmetric_normalize(g: SparseGraph) -> SparseGraph:
    """A = D^{-1/2} A_raw D^{-1/2}; nós isolados ficam com linha e coluna nulas"""
    validate_raw(g)
    deg = g.degrees()
    inv_sqrt = np.zeros_like(deg)
    nonzero = deg > 0
    inv_sqrt[nonzero] = 1.0 / np.sqrt(deg[nonzero])
    values = g.values * inv_sqrt[g.rows] * inv_sqrt[g.cols]
    return g.with_values(values, GraphKind.SYM_NORMALIZED)


def laplacian(a: SparseGraph) -> SparseGraph:
    """L = I - A com diagonal explícita"""
    if a.kind not in NORMALIZED_KINDS:
        raise GraphStructureError(f"Laplaciano exige adjacência normalizada, recebido {a.kind.value}")
    n = a.n_nodes
    diag = np.arange(n)
    rows = np.concatenate([diag, a.rows])
    cols = np.concatenate([diag, a.cols])
    values = np.concatenate([np.ones(n), -a.values])
    matrix = sp.coo_matrix((values, (rows, cols)), shape=(n, n)).tocsr()
    return SparseGraph(matrix, GraphKind.LAPLACIAN)


def spmm(m: SparseGraph, h: np.ndarray) -> np.ndarray:
    """Produto esparso-denso exato, somando por coluna crescente dentro de cada linha"""
    h = np.asarray(h, dtype=np.float64)
    if h.ndim != 2 or h.shape[0] != m.n_nodes:
        raise ShapeError(f"spmm: operador com {m.n_nodes} nós e matriz {h.shape}")
    return np.asarray(m.matrix @ h)


def sparse_square(a: SparseGraph) -> SparseGraph:
    """A² com zeros estruturais abaixo de 1e-15 descartados"""
    squared = a.matrix @ a.matrix
    squared = sp.csr_matrix(squared)
    squared.data[np.abs(squared.data) < STRUCTURAL_ZERO] = 0.0
    squared.eliminate_zeros()
    return SparseGraph(squared, a.kind)
