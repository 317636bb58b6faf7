"""
Exportação de embeddings H(t) em instantes escolhidos, para projeção e gráficos externos
"""
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from gread.errors import ConfigError
from gread.model import Mode, ModelConfig, ModelParams, forward
from gread.utils.logs import log_message


@dataclass(frozen=True, eq=False)
class EmbeddingSnapshot:
    time: float
    step: int
    embeddings: np.ndarray

    def header(self) -> List[str]:
        return ["node", "label"] + [f"c{k}" for k in range(self.embeddings.shape[1])]

    def rows(self, labels) -> List[list]:
        return [[node, int(labels[node]), *self.embeddings[node]] for node in range(self.embeddings.shape[0])]


def export_embeddings(params: ModelParams, cfg: ModelConfig, data, times: Sequence[float]) -> List[EmbeddingSnapshot]:
    """H(t) do estado da trilha mais próximo de cada t (t = 0 é a saída do encoder)"""
    if not times:
        raise ConfigError("Nenhum instante de exportação informado")
    steps = [cfg.solver.step_index(float(t)) for t in times]
    _, cache = forward(cfg, params, data, Mode.eval(), trace=True)
    snapshots = [EmbeddingSnapshot(float(t), step, cache.states[step].copy()) for t, step in zip(times, steps)]
    log_message(f"[EXPORT] {len(snapshots)} instantes exportados (passos {steps})")
    return snapshots
