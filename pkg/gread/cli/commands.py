"""
Comandos da CLI - cada um escreve seus arquivos em out_dir, ecoa config.json e retorna 0
"""
from pathlib import Path

import numpy as np

from gread.analysis.ablation import ABLATION_HEADER, ABLATION_RAW_HEADER, ablation
from gread.analysis.bench import BENCH_HEADER, loglog_slope, scaling_bench
from gread.analysis.energy import center_columns, energy_evolution, grid_demo, grid_initial_condition
from gread.analysis.export import export_embeddings
from gread.analysis.sweep import RAW_HEADER, SWEEP_HEADER, sweep
from gread.cli.config import (
    RunConfig, build_dataset, csbm_config, homophily_config, model_config, solver_config,
    train_config, write_config,
)
from gread.datagen.csbm import generate_csbm
from gread.datagen.homophily import generate_homophily_graph
from gread.datagen.loader import save_dataset
from gread.dynamics.reaction import Coefficients, ReactionSpec, build_operators
from gread.errors import ConfigError
from gread.graph.builders import grid_graph
from gread.graph.dataset import LabeledGraph, homophily_ratio, largest_connected_component, stratified_split
from gread.graph.sparse import n_undirected_edges, symmetric_normalize
from gread.model import load_checkpoint, save_checkpoint
from gread.train.loop import evaluate, fit
from gread.utils.csvio import format_value, write_csv
from gread.utils.logs import log_message
from gread.utils.seeding import make_rng

HISTORY_HEADER = ["epoch", "train_loss", "val_acc", "test_acc"]
ENERGY_HEADER = ["step", "energy", "label"]
GRID_HEADER = ["node", "x", "y", "initial", "diffusion", "bs"]


def _echo(config: RunConfig, out_dir) -> Path:
    out_dir = Path(out_dir)
    write_config(config, out_dir)
    return out_dir


def cmd_train(config: RunConfig, out_dir) -> int:
    out_dir = _echo(config, out_dir)
    data = build_dataset(config)
    mcfg = model_config(config, data.n_classes)
    result = fit(mcfg, train_config(config), data)
    test_acc = evaluate(mcfg, result.best_params, data, "test")

    save_checkpoint(out_dir / "model.npz", mcfg, result.best_params)
    write_csv(out_dir / "history.csv", HISTORY_HEADER,
              ([r.epoch, r.train_loss, r.val_acc, r.test_acc] for r in result.history))
    line = f"test_acc={format_value(test_acc)}"
    with open(out_dir / "metrics.txt", 'w', encoding='utf-8', newline='') as f:
        f.write(f"{line}\nbest_epoch={result.best_epoch}\n")
    log_message(f"[CLI] train: {line} (melhor época {result.best_epoch})")
    print(line)
    return 0


def grid_dataset(config: RunConfig) -> LabeledGraph:
    """Grade com a condição inicial 1-d como feature; rótulo 1 dentro do quadrado central"""
    graph = grid_graph(config.grid_width, config.grid_height)
    initial = grid_initial_condition(config.grid_width, config.grid_height)
    labels = initial[:, 0].astype(np.int64)
    train, val, test = stratified_split(labels, make_rng(config.seed))
    return LabeledGraph(graph, initial, labels, train, val, test)


def cmd_generate(config: RunConfig, out_dir, kind: str = None) -> int:
    kind = kind or config.dataset
    out_dir = _echo(config, out_dir)
    if kind == "csbm":
        data = generate_csbm(csbm_config(config))
    elif kind == "homophily":
        data = generate_homophily_graph(homophily_config(config))
    elif kind == "grid":
        data = grid_dataset(config)
        rows = grid_demo(config.grid_width, config.grid_height, solver_config(config), data.features)
        write_csv(out_dir / "grid_demo.csv", GRID_HEADER, rows)
    else:
        raise ConfigError(f"Gerador desconhecido: {kind} (use csbm, homophily ou grid)")
    if config.lcc and kind != "grid":
        data = largest_connected_component(data)

    save_dataset(data, out_dir)
    print(f"nodes={data.n_nodes}")
    print(f"edges={n_undirected_edges(data.graph)}")
    if data.graph.nnz:
        print(f"homophily_ratio={format_value(homophily_ratio(data))}")
    log_message(f"[CLI] generate {kind}: {data.n_nodes} nós em {out_dir}")
    return 0


def cmd_energy(config: RunConfig, out_dir) -> int:
    """Traço de energia da dinâmica `reaction` sobre as features do dataset (adjacência normalizada)"""
    out_dir = _echo(config, out_dir)
    data = build_dataset(config)
    spec = ReactionSpec.parse(config.reaction)
    h0 = center_columns(data.features) if config.energy_center else data.features
    ops = build_operators(symmetric_normalize(data.graph), spec, h0)
    coeffs = Coefficients.create(data.n_nodes, config.alpha_mode, config.beta_mode,
                                 alpha=config.energy_alpha, beta=config.energy_beta)
    trace = energy_evolution(spec, ops, coeffs, solver_config(config), h0, data.graph, seed=config.seed)
    write_csv(out_dir / "energy.csv", ENERGY_HEADER, trace.rows())
    print(f"final_energy={format_value(float(trace.energy[-1]))}")
    return 0


def cmd_sweep(config: RunConfig, out_dir) -> int:
    if not config.sweep_grid:
        raise ConfigError("sweep_grid vazio: informe ao menos um valor")
    out_dir = _echo(config, out_dir)
    data = build_dataset(config)
    result = sweep(config.sweep_param, config.sweep_grid, model_config(config, data.n_classes),
                   train_config(config), data, config.n_seeds, config.jobs)
    write_csv(out_dir / "sweep.csv", SWEEP_HEADER, result.rows)
    write_csv(out_dir / "sweep_raw.csv", RAW_HEADER, result.raw)
    log_message(f"[CLI] sweep {config.sweep_param}: {len(result.rows)} linhas")
    return 0


def cmd_ablation(config: RunConfig, out_dir) -> int:
    out_dir = _echo(config, out_dir)
    data = build_dataset(config)
    result = ablation(model_config(config, data.n_classes), train_config(config), data,
                      config.ablation_adjacency, config.ablation_beta, config.n_seeds, config.jobs)
    write_csv(out_dir / "ablation.csv", ABLATION_HEADER, result.rows)
    write_csv(out_dir / "ablation_raw.csv", ABLATION_RAW_HEADER, result.raw)
    return 0


def cmd_export(config: RunConfig, out_dir) -> int:
    """Usa o checkpoint informado ou treina um modelo antes de exportar"""
    out_dir = _echo(config, out_dir)
    data = build_dataset(config)
    if config.checkpoint:
        mcfg, params = load_checkpoint(config.checkpoint)
    else:
        mcfg = model_config(config, data.n_classes)
        params = fit(mcfg, train_config(config), data).best_params
    times = config.export_times or [0.0, mcfg.solver.T]
    for snapshot in export_embeddings(params, mcfg, data, times):
        write_csv(out_dir / f"embeddings_t{format_value(snapshot.time)}.csv", snapshot.header(),
                  snapshot.rows(data.labels))
    return 0


def cmd_bench(config: RunConfig, out_dir) -> int:
    out_dir = _echo(config, out_dir)
    rows = scaling_bench(config.bench_sizes, config.reaction, config.bench_degree, config.bench_repeats,
                         config.hidden_dim, config.seed)
    write_csv(out_dir / "bench.csv", BENCH_HEADER, rows)
    if len(rows) > 1:
        print(f"loglog_slope={loglog_slope(rows):.3f}")
    return 0


COMMANDS = {
    "train": cmd_train,
    "generate": cmd_generate,
    "energy": cmd_energy,
    "sweep": cmd_sweep,
    "export": cmd_export,
    "bench": cmd_bench,
    "ablation": cmd_ablation,
}
