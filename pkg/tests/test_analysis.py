import numpy as np
import pytest

from gread.analysis import (
    BENCH_HEADER, ablation, center_columns, dirichlet_energy, energy_evolution, export_embeddings, grid_demo,
    loglog_slope, scaling_bench, summarize, sweep,
)
from gread.analysis.sweep import raw_row
from gread.dynamics import Coefficients, ReactionKind, ReactionSpec, SolverConfig, build_operators
from gread.errors import ConfigError, ShapeError
from gread.graph import from_edges, grid_graph, random_regular_graph, symmetric_normalize
from gread.model import Mode, ModelConfig, forward, init_params
from gread.train import TrainConfig
from gread.workers import CellFailure


# ========================================================================
# ENERGIA
# ========================================================================

def test_dirichlet_energy_of_constant_state_is_zero(p3):
    assert dirichlet_energy(p3, np.full((3, 2), 4.0)) == 0.0


def test_dirichlet_energy_on_single_edge(k2):
    assert dirichlet_energy(k2, np.array([[0.0], [1.0]])) == pytest.approx(1.0)


def test_dirichlet_energy_scales_quadratically(p3):
    h = np.array([[0.0, 1.0], [2.0, -1.0], [0.5, 0.5]])
    assert dirichlet_energy(p3, 3.0 * h) == pytest.approx(9.0 * dirichlet_energy(p3, h))
    with pytest.raises(ShapeError):
        dirichlet_energy(p3, np.zeros((2, 1)))


def test_dirichlet_energy_matches_double_sum():
    rng = np.random.default_rng(0)
    for _ in range(10):
        n = int(rng.integers(2, 51))
        src, dst = np.triu_indices(n, k=1)
        keep = rng.random(src.size) < 0.2
        g = from_edges(n, np.stack([src[keep], dst[keep]], axis=1))
        h = rng.standard_normal((n, 3))
        dense = g.to_dense()
        brute = sum(dense[i, j] * np.sum((h[i] - h[j]) ** 2) for i in range(n) for j in range(n)) / n
        assert dirichlet_energy(g, h) == pytest.approx(brute, abs=1e-10)


def trace_for(kind, data, cfg=SolverConfig(tau=1.0, T=40.0), h0=None):
    spec = ReactionSpec(kind)
    h0 = center_columns(data.features) if h0 is None else h0
    ops = build_operators(symmetric_normalize(data.graph), spec, h0)
    return energy_evolution(spec, ops, Coefficients.create(data.n_nodes), cfg, h0, data.graph)


def test_trace_covers_every_step(csbm100):
    trace = trace_for(ReactionKind.BS, csbm100, SolverConfig(tau=0.5, T=3.0))
    assert len(trace.energy) == 7
    assert trace.energy[0] == pytest.approx(dirichlet_energy(csbm100.graph, center_columns(csbm100.features)))
    assert trace.rows()[0] == [0, trace.energy[0], "BS"]


def test_diffusion_oversmooths_while_bs_does_not(csbm100):
    diffusion = trace_for(ReactionKind.DIFFUSION_ONLY, csbm100)
    bs = trace_for(ReactionKind.BS, csbm100)
    assert len(diffusion.energy) == 41
    assert diffusion.energy[-1] / diffusion.energy[0] < 1e-4
    assert bs.energy[-1] >= 1e3 * diffusion.energy[-1]


def test_diffusion_energy_is_eventually_non_increasing():
    g = random_regular_graph(30, 4, seed=1)
    h0 = np.random.default_rng(1).standard_normal((30, 2))
    spec = ReactionSpec(ReactionKind.DIFFUSION_ONLY)
    for tau in (0.5, 1.0):
        trace = energy_evolution(spec, build_operators(symmetric_normalize(g), spec), Coefficients.create(30),
                                 SolverConfig(tau=tau, T=20.0), h0, g)
        tail = trace.energy[5:]
        assert np.all(np.diff(tail) <= 1e-12)


def test_gcn_trace_is_seed_pinned(csbm100):
    spec = ReactionSpec(ReactionKind.GCN_STEP)
    h0 = center_columns(csbm100.features)
    ops = build_operators(symmetric_normalize(csbm100.graph), spec)
    cfg = SolverConfig(tau=1.0, T=5.0)
    first = energy_evolution(spec, ops, Coefficients.create(100), cfg, h0, csbm100.graph, seed=3)
    second = energy_evolution(spec, ops, Coefficients.create(100), cfg, h0, csbm100.graph, seed=3)
    assert first.energy.tobytes() == second.energy.tobytes()
    assert len(first.energy) == 6


def test_grid_demo_keeps_contrast_under_bs():
    rows = grid_demo(20, 20, SolverConfig(tau=0.25, T=5.0))
    assert len(rows) == 400
    assert rows[21][:3] == [21, 1, 1]
    columns = np.array([row[3:] for row in rows])
    assert columns[:, 0].sum() == 100.0
    g = grid_graph(20, 20)
    assert dirichlet_energy(g, columns[:, 2]) > dirichlet_energy(g, columns[:, 1])


# ========================================================================
# VARREDURA, ABLAÇÃO
# ========================================================================

def tiny_model(**overrides):
    values = dict(hidden_dim=4, n_classes=2, reaction="BS", solver=SolverConfig(tau=0.5, T=1.0))
    values.update(overrides)
    return ModelConfig(**values)


def test_summarize_uses_population_std():
    mean, std = summarize([0.5, 0.7, float('nan')])
    assert mean == pytest.approx(0.6)
    assert std == pytest.approx(0.1)
    assert np.isnan(summarize([])[0])


def test_failed_cell_row():
    row = raw_row([2.0], 4, CellFailure(0, "DivergenceError: passo 3"))
    assert (row[0], row[1], row[3]) == (2.0, 4, 0)
    assert np.isnan(row[2])
    assert row[4].startswith("error: ")


def test_single_seed_sweep_has_zero_std(graph20):
    result = sweep("T", [1.0], tiny_model(), TrainConfig(max_epochs=2), graph20, n_seeds=1, jobs=1)
    assert len(result.rows) == 1
    assert result.rows[0][0] == 1.0
    assert result.rows[0][2] == 0.0


def test_duplicate_grid_values_give_identical_rows(graph20):
    result = sweep("tau", [0.5, 0.5], tiny_model(), TrainConfig(max_epochs=2), graph20, n_seeds=2, jobs=1)
    assert result.rows[0] == result.rows[1]
    assert [row[1] for row in result.raw] == [0, 1, 0, 1]


def test_sweep_std_is_recomputable_from_raw_rows(graph20):
    result = sweep("T", [1.0, 2.0], tiny_model(), TrainConfig(max_epochs=3, seed=7), graph20, n_seeds=3, jobs=1)
    for index, row in enumerate(result.rows):
        accs = [raw[2] for raw in result.raw[index * 3:(index + 1) * 3]]
        assert all(raw[4] == "ok" for raw in result.raw)
        assert row[1] == pytest.approx(np.mean(accs))
        assert row[2] == pytest.approx(np.std(accs))


def test_parallel_sweep_matches_sequential(graph20):
    args = ("T", [1.0, 2.0], tiny_model(dropout=0.2), TrainConfig(max_epochs=3), graph20)
    sequential = sweep(*args, n_seeds=2, jobs=1)
    parallel = sweep(*args, n_seeds=2, jobs=2)
    assert sequential.rows == parallel.rows
    assert sequential.raw == parallel.raw


def test_sweep_errors(graph20):
    with pytest.raises(ConfigError):
        sweep("T", [], tiny_model(), TrainConfig(max_epochs=1), graph20)
    with pytest.raises(ConfigError):
        sweep("dropout", [0.1], tiny_model(), TrainConfig(max_epochs=1), graph20)


def test_ablation_grid_order(graph20):
    result = ablation(tiny_model(), TrainConfig(max_epochs=2), graph20, n_seeds=1, jobs=1)
    assert [row[:2] for row in result.rows] == [["OA", "SC"], ["OA", "VC"], ["SA", "SC"], ["SA", "VC"]]
    assert len(result.raw) == 4
    with pytest.raises(ConfigError):
        ablation(tiny_model(), TrainConfig(max_epochs=1), graph20, adjacency_modes=())


# ========================================================================
# EXPORTAÇÃO, BENCHMARK
# ========================================================================

def test_export_endpoints(graph20):
    cfg = tiny_model(solver=SolverConfig(tau=0.25, T=1.0))
    params = init_params(cfg, graph20.n_features, graph20.n_nodes, 0)
    start, end = export_embeddings(params, cfg, graph20, [0.0, 1.0])
    _, cache = forward(cfg, params, graph20, Mode.eval(), trace=True)
    assert (start.step, end.step) == (0, 4)
    np.testing.assert_array_equal(start.embeddings, cache.h0)
    np.testing.assert_array_equal(end.embeddings, cache.h_final)
    assert start.header() == ["node", "label", "c0", "c1", "c2", "c3"]
    assert start.rows(graph20.labels)[0][:2] == [0, int(graph20.labels[0])]


def test_export_rejects_times_outside_the_horizon(graph20):
    cfg = tiny_model()
    params = init_params(cfg, graph20.n_features, graph20.n_nodes, 0)
    with pytest.raises(ConfigError):
        export_embeddings(params, cfg, graph20, [2.0])
    with pytest.raises(ConfigError):
        export_embeddings(params, cfg, graph20, [])


def test_bench_single_size():
    rows = scaling_bench([200], "F", repeats=3)
    assert BENCH_HEADER == ["edges", "ns_per_step"]
    assert len(rows) == 1
    assert rows[0][0] >= 200
    assert rows[0][1] > 0


def test_loglog_slope_of_exact_power_laws():
    assert loglog_slope([[1000, 5000], [2000, 10000], [4000, 20000]]) == pytest.approx(1.0)
    assert loglog_slope([[10, 100], [100, 10000]]) == pytest.approx(2.0)
    with pytest.raises(ConfigError):
        loglog_slope([[10, 100]])


SCALING_SIZES = [20000, 40000, 80000, 160000, 320000]


@pytest.mark.slow
@pytest.mark.parametrize("reaction", ["F", "BS"])
def test_bench_scales_near_linearly(reaction):
    rows = scaling_bench(SCALING_SIZES, reaction, repeats=9)
    assert loglog_slope(rows) < 1.4


@pytest.mark.slow
def test_bs_step_costs_more_than_fisher_at_equal_edges():
    fisher = scaling_bench([40000], "F", repeats=15)[0]
    bs = scaling_bench([40000], "BS", repeats=15)[0]
    assert fisher[0] == bs[0]
    assert bs[1] > fisher[1]
