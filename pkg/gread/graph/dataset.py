"""
Dataset rotulado - LabeledGraph, razão de homofilia, maior componente conexa, splits estratificados
"""
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from gread.errors import DataError, ShapeError
from gread.graph.sparse import GraphKind, SparseGraph

SPLIT_NAMES = ("train", "val", "test")


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """Grafo cru + features + rótulos + máscaras de treino/validação/teste"""
    graph: SparseGraph
    features: np.ndarray
    labels: np.ndarray
    train_mask: np.ndarray
    val_mask: np.ndarray
    test_mask: np.ndarray

    def __post_init__(self):
        n = self.graph.n_nodes
        if self.graph.kind is not GraphKind.RAW:
            raise DataError(f"LabeledGraph exige grafo Raw, recebido {self.graph.kind.value}")
        features = np.asarray(self.features, dtype=np.float64)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        if features.shape[0] != n:
            raise ShapeError(f"Features com {features.shape[0]} linhas para {n} nós")
        if not np.all(np.isfinite(features)):
            raise DataError("Features com valores não finitos")
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.shape != (n,):
            raise ShapeError(f"Esperados {n} rótulos, recebidos {labels.shape}")
        if n and labels.min() < 0:
            raise DataError(f"Rótulo negativo no nó {int(np.argmin(labels))}")
        masks = []
        for name in SPLIT_NAMES:
            mask = np.asarray(getattr(self, f"{name}_mask"), dtype=bool)
            if mask.shape != (n,):
                raise ShapeError(f"Máscara {name} com forma {mask.shape} para {n} nós")
            masks.append(mask)
        overlap = (masks[0].astype(int) + masks[1] + masks[2]) > 1
        if np.any(overlap):
            raise DataError(f"Nó {int(np.flatnonzero(overlap)[0])} em mais de um split")
        object.__setattr__(self, 'features', features)
        object.__setattr__(self, 'labels', labels)
        for name, mask in zip(SPLIT_NAMES, masks):
            object.__setattr__(self, f"{name}_mask", mask)

    @property
    def n_nodes(self) -> int:
        return self.graph.n_nodes

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    def mask(self, name: str) -> np.ndarray:
        if name not in SPLIT_NAMES:
            raise DataError(f"Split desconhecido: {name}")
        return getattr(self, f"{name}_mask")


def homophily_ratio(d: LabeledGraph) -> float:
    """Média, sobre nós com vizinhos, da fração de vizinhos com o mesmo rótulo"""
    g = d.graph
    if g.n_nodes == 0:
        raise DataError("Grafo vazio")
    deg = np.bincount(g.rows, weights=g.values, minlength=g.n_nodes)
    has_neighbors = deg > 0
    if not np.any(has_neighbors):
        raise DataError("Grafo sem arestas")
    same = (d.labels[g.rows] == d.labels[g.cols]).astype(np.float64) * g.values
    agree = np.bincount(g.rows, weights=same, minlength=g.n_nodes)
    return float(np.mean(agree[has_neighbors] / deg[has_neighbors]))


def induced_subgraph(d: LabeledGraph, keep: np.ndarray) -> LabeledGraph:
    """Subgrafo induzido pelos nós `keep` (ordem preservada, índices renumerados)"""
    keep = np.sort(np.asarray(keep, dtype=np.int64))
    matrix = d.graph.matrix[keep][:, keep]
    return LabeledGraph(
        graph=SparseGraph(sp.csr_matrix(matrix), GraphKind.RAW),
        features=d.features[keep],
        labels=d.labels[keep],
        train_mask=d.train_mask[keep],
        val_mask=d.val_mask[keep],
        test_mask=d.test_mask[keep],
    )


def largest_connected_component(d: LabeledGraph) -> LabeledGraph:
    """Maior componente conexa; empate resolvido pela componente que contém o menor índice"""
    n = d.n_nodes
    if n == 0:
        return d
    n_components, component = connected_components(d.graph.matrix, directed=False)
    if n_components == 1:
        return d
    sizes = np.bincount(component, minlength=n_components)
    _, first_index = np.unique(component, return_index=True)
    candidates = np.flatnonzero(sizes == sizes.max())
    chosen = candidates[np.argmin(first_index[candidates])]
    return induced_subgraph(d, np.flatnonzero(component == chosen))


def stratified_split(labels, rng, fractions=(0.6, 0.2, 0.2)):
    """Máscaras train/val/test estratificadas por classe"""
    labels = np.asarray(labels, dtype=np.int64)
    if len(fractions) != 3 or min(fractions) < 0 or abs(sum(fractions) - 1.0) > 1e-9:
        raise DataError(f"Frações de split inválidas: {fractions}")
    n = labels.shape[0]
    masks = [np.zeros(n, dtype=bool) for _ in range(3)]
    for cls in np.unique(labels):
        members = rng.permutation(np.flatnonzero(labels == cls))
        n_train = int(np.floor(fractions[0] * members.size + 0.5))
        n_val = int(np.floor(fractions[1] * members.size + 0.5))
        n_val = min(n_val, members.size - n_train)
        masks[0][members[:n_train]] = True
        masks[1][members[n_train:n_train + n_val]] = True
        masks[2][members[n_train + n_val:]] = True
    return tuple(masks)
