"""
Ablação de adjacência (OA/SA) e do modo de β (SC/VC)
"""
from dataclasses import dataclass, replace
from typing import List, Sequence

from gread.analysis.sweep import raw_row, summarize, train_cell
from gread.dynamics.reaction import parse_mode
from gread.errors import ConfigError
from gread.model import AdjacencyMode, ModelConfig
from gread.train.loop import TrainConfig
from gread.utils.logs import log_message
from gread.workers.cells import CellFailure, run_cells

ABLATION_HEADER = ["adjacency_mode", "beta_mode", "mean_acc", "std_acc"]
ABLATION_RAW_HEADER = ["adjacency_mode", "beta_mode", "seed", "test_acc", "best_epoch", "status"]


@dataclass(eq=False)
class AblationResult:
    rows: List[list]
    raw: List[list]


def ablation(mcfg: ModelConfig, tcfg: TrainConfig, data, adjacency_modes: Sequence = ("OA", "SA"),
             beta_modes: Sequence = ("SC", "VC"), n_seeds: int = 1, jobs: int = None) -> AblationResult:
    if not adjacency_modes or not beta_modes:
        raise ConfigError("Ablação exige ao menos um modo de adjacência e um modo de β")
    if n_seeds < 1:
        raise ConfigError(f"n_seeds deve ser >= 1, recebido {n_seeds}")
    combos = [(AdjacencyMode.parse(a), parse_mode(b)) for a in adjacency_modes for b in beta_modes]
    configs = [replace(mcfg, adjacency_mode=a, beta_mode=b) for a, b in combos]

    tasks = [
        (lambda cfg=cfg, seed=tcfg.seed + k: train_cell(cfg, replace(tcfg, seed=seed), data))
        for cfg in configs for k in range(n_seeds)
    ]
    log_message(f"[SWEEP] Ablação: {len(combos)} combinações x {n_seeds} sementes")
    outcomes = run_cells(tasks, jobs)

    rows, raw = [], []
    for c, (adjacency, beta) in enumerate(combos):
        key = [adjacency.value, beta.value]
        accs = []
        for k in range(n_seeds):
            outcome = outcomes[c * n_seeds + k]
            raw.append(raw_row(key, tcfg.seed + k, outcome))
            if not isinstance(outcome, CellFailure):
                accs.append(outcome.test_acc)
        rows.append([*key, *summarize(accs)])
    return AblationResult(rows, raw)
