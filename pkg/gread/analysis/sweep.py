"""
Varredura de sensibilidade em T ou tau - uma célula de treino por (valor, semente)
"""
from dataclasses import dataclass, replace
from typing import List, Sequence

import numpy as np

from gread.dynamics.solvers import SolverConfig
from gread.errors import ConfigError
from gread.model import ModelConfig
from gread.train.loop import TrainConfig, evaluate, fit
from gread.utils.logs import log_message
from gread.workers.cells import CellFailure, run_cells

SWEEP_PARAMS = ("T", "tau")
SWEEP_HEADER = ["value", "mean_acc", "std_acc"]
RAW_HEADER = ["value", "seed", "test_acc", "best_epoch", "status"]


@dataclass(frozen=True)
class CellResult:
    test_acc: float
    best_epoch: int


def train_cell(mcfg: ModelConfig, tcfg: TrainConfig, data) -> CellResult:
    result = fit(mcfg, tcfg, data)
    return CellResult(evaluate(mcfg, result.best_params, data, "test"), result.best_epoch)


def summarize(accs: Sequence[float]):
    """(média, desvio padrão populacional) das acurácias finitas; nan se nenhuma"""
    values = np.array([a for a in accs if np.isfinite(a)], dtype=np.float64)
    if values.size == 0:
        return float('nan'), float('nan')
    return float(values.mean()), float(values.std())


def raw_row(key, seed, outcome):
    if isinstance(outcome, CellFailure):
        return [*key, seed, float('nan'), 0, f"error: {outcome.message}"]
    return [*key, seed, outcome.test_acc, outcome.best_epoch, "ok"]


def with_param(mcfg: ModelConfig, param: str, value: float) -> ModelConfig:
    solver = mcfg.solver
    if param == "T":
        solver = SolverConfig(solver.method, solver.tau, float(value))
    elif param == "tau":
        solver = SolverConfig(solver.method, float(value), solver.T)
    else:
        raise ConfigError(f"Parâmetro de varredura desconhecido: {param} (use {', '.join(SWEEP_PARAMS)})")
    return replace(mcfg, solver=solver)


@dataclass(eq=False)
class SweepResult:
    rows: List[list]
    raw: List[list]


def sweep(param: str, grid: Sequence[float], mcfg: ModelConfig, tcfg: TrainConfig, data, n_seeds: int = 1,
          jobs: int = None) -> SweepResult:
    """A semente k de cada valor é tcfg.seed + k, igual para todos os valores da grade"""
    if not grid:
        raise ConfigError("Grade de varredura vazia")
    if n_seeds < 1:
        raise ConfigError(f"n_seeds deve ser >= 1, recebido {n_seeds}")
    configs = [with_param(mcfg, param, v) for v in grid]

    cells = [(i, k) for i in range(len(grid)) for k in range(n_seeds)]
    tasks = [
        (lambda cfg=configs[i], seed=tcfg.seed + k: train_cell(cfg, replace(tcfg, seed=seed), data))
        for i, k in cells
    ]
    log_message(f"[SWEEP] {param}: {len(grid)} valores x {n_seeds} sementes ({len(tasks)} células)")
    outcomes = run_cells(tasks, jobs)

    rows, raw = [], []
    for i, value in enumerate(grid):
        accs = []
        for k in range(n_seeds):
            outcome = outcomes[i * n_seeds + k]
            raw.append(raw_row([float(value)], tcfg.seed + k, outcome))
            if not isinstance(outcome, CellFailure):
                accs.append(outcome.test_acc)
        rows.append([float(value), *summarize(accs)])
    return SweepResult(rows, raw)
