"""
cSBM - SBM clássico com features gaussianas por classe
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from gread.errors import ConfigError
from gread.graph.dataset import LabeledGraph, stratified_split
from gread.graph.sparse import from_edges
from gread.utils.logs import log_message
from gread.utils.seeding import make_rng


@dataclass(frozen=True)
class CsbmConfig:
    n_nodes: int = 100
    n_classes: int = 2
    feat_dim: int = 2
    mu: Optional[Tuple[float, ...]] = None
    sigma: float = 2.0
    p_intra: float = 0.9
    p_inter: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.n_classes < 1 or self.n_nodes < 1:
            raise ConfigError(f"cSBM exige n_nodes e n_classes >= 1 ({self.n_nodes}, {self.n_classes})")
        if self.n_nodes % self.n_classes:
            raise ConfigError(f"n_nodes ({self.n_nodes}) deve ser divisível por n_classes ({self.n_classes})")
        if self.feat_dim < 1:
            raise ConfigError(f"feat_dim deve ser >= 1, recebido {self.feat_dim}")
        for name in ("p_intra", "p_inter"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"{name} deve estar em [0, 1], recebido {p}")
        if self.sigma < 0:
            raise ConfigError(f"sigma deve ser >= 0, recebido {self.sigma}")
        if self.mu is not None:
            object.__setattr__(self, 'mu', tuple(float(m) for m in self.mu))
            if len(self.mu) != self.n_classes:
                raise ConfigError(f"mu precisa de {self.n_classes} médias, recebidas {len(self.mu)}")

    @property
    def class_means(self) -> np.ndarray:
        if self.mu is not None:
            return np.array(self.mu)
        if self.n_classes == 1:
            return np.zeros(1)
        return np.linspace(-0.5, 0.5, self.n_classes)


def generate_csbm(cfg: CsbmConfig) -> LabeledGraph:
    """Cada par não ordenado recebe aresta com p_intra (mesma classe) ou p_inter"""
    rng = make_rng(cfg.seed)
    n = cfg.n_nodes
    labels = rng.permutation(np.repeat(np.arange(cfg.n_classes), n // cfg.n_classes))

    src, dst = np.triu_indices(n, k=1)
    p = np.where(labels[src] == labels[dst], cfg.p_intra, cfg.p_inter)
    keep = rng.random(src.shape[0]) < p
    graph = from_edges(n, np.stack([src[keep], dst[keep]], axis=1))

    features = cfg.class_means[labels][:, None] + cfg.sigma * rng.standard_normal((n, cfg.feat_dim))
    train, val, test = stratified_split(labels, rng)
    log_message(f"[DATAGEN] cSBM: {n} nós, {int(keep.sum())} arestas (seed={cfg.seed})")
    return LabeledGraph(graph, features, labels, train, val, test)
