# Analysis module init
from gread.analysis.energy import (
    EnergyTrace, dirichlet_energy, energy_evolution, center_columns, grid_initial_condition, grid_demo,
)
from gread.analysis.sweep import SWEEP_PARAMS, SweepResult, CellResult, sweep, train_cell, summarize
from gread.analysis.ablation import AblationResult, ablation
from gread.analysis.export import EmbeddingSnapshot, export_embeddings
from gread.analysis.bench import BENCH_HEADER, loglog_slope, scaling_bench

__all__ = [
    'EnergyTrace',
    'dirichlet_energy',
    'energy_evolution',
    'center_columns',
    'grid_initial_condition',
    'grid_demo',
    'SWEEP_PARAMS',
    'SweepResult',
    'CellResult',
    'sweep',
    'train_cell',
    'summarize',
    'AblationResult',
    'ablation',
    'EmbeddingSnapshot',
    'export_embeddings',
    'BENCH_HEADER',
    'scaling_bench',
    'loglog_slope',
]
