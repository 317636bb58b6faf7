import json

import numpy as np
import pytest

from gread.cli.config import (
    PRESET_DIRS, RunConfig, apply_overrides, build_dataset, coerce, load_config, model_config, train_config,
)
from gread.cli.main import run
from gread.errors import ConfigError
from gread.train import evaluate, fit
from gread.utils.csvio import read_csv

QUICK = ["--set", "max_epochs=3", "--set", "hidden_dim=4", "--set", "T=1.0", "--set", "tau=0.5"]


def lines(path):
    return path.read_text(encoding="utf-8").splitlines()


def test_train_writes_outputs(tmp_path, capsys):
    assert run(["train", "--config", "gread-bs-csbm", "--out", str(tmp_path), "--set", "max_epochs=5"]) == 0
    for name in ("config.json", "model.npz", "history.csv", "metrics.txt"):
        assert (tmp_path / name).is_file()
    assert len(lines(tmp_path / "history.csv")) == 6
    assert capsys.readouterr().out.startswith("test_acc=")
    echoed = json.loads((tmp_path / "config.json").read_text(encoding="utf-8"))
    assert echoed["max_epochs"] == 5 and echoed["beta_mode"] == "VC"


def test_train_history_is_byte_identical(tmp_path):
    for name in ("a", "b"):
        assert run(["train", "--out", str(tmp_path / name), "--seed", "4", "--set", "dropout=0.3", *QUICK]) == 0
    assert (tmp_path / "a" / "history.csv").read_bytes() == (tmp_path / "b" / "history.csv").read_bytes()


def test_unknown_key_is_config_error(tmp_path, capsys):
    assert run(["train", "--out", str(tmp_path), "--set", "learning_rate=0.1"]) == 1
    assert "learning_rate" in capsys.readouterr().err


def test_bad_value_and_bad_command(tmp_path):
    assert run(["train", "--out", str(tmp_path), "--set", "max_epochs=many"]) == 1
    with pytest.raises(SystemExit) as info:
        run(["fly"])
    assert info.value.code == 1


def test_empty_sweep_grid_is_config_error(tmp_path):
    assert run(["sweep", "--out", str(tmp_path), "--set", "sweep_grid="]) == 1


def test_missing_dataset_files_is_data_error(tmp_path):
    missing = str(tmp_path / "missing")
    args = ["--set", "dataset=files"] + [x for key in ("edges", "features", "labels", "splits")
                                         for x in ("--set", f"{key}={missing}")]
    assert run(["train", "--out", str(tmp_path / "out"), *args]) == 2


def test_generate_grid(tmp_path, capsys):
    assert run(["generate", "grid", "--config", "grid-demo", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "nodes=400" in out and "edges=760" in out
    header, rows = read_csv(tmp_path / "grid_demo.csv")
    assert header == ["node", "x", "y", "initial", "diffusion", "bs"]
    assert len(rows) == 400


def test_generated_csbm_trains_from_files(tmp_path, capsys):
    data_dir = tmp_path / "data"
    assert run(["generate", "csbm", "--out", str(data_dir), "--seed", "2"]) == 0
    assert "edges=" in capsys.readouterr().out
    files = [f"{key}={data_dir / name}" for key, name in
             (("edges", "edges.tsv"), ("features", "features.csv"), ("labels", "labels.csv"),
              ("splits", "splits.csv"))]
    args = ["--set", "dataset=files"] + [x for item in files for x in ("--set", item)]
    assert run(["train", "--out", str(tmp_path / "run"), *args, *QUICK]) == 0


def test_texas_style_configuration_runs(tmp_path):
    data_dir = tmp_path / "data"
    assert run(["generate", "homophily", "--out", str(data_dir), "--set", "homophily_nodes=60",
                "--set", "homophily_classes=3", "--set", "target_h=0.2", "--set", "homophily_feat_dim=6"]) == 0
    args = ["--config", "gread-bs-texas", "--set", f"edges={data_dir / 'edges.tsv'}",
            "--set", f"features={data_dir / 'features.csv'}", "--set", f"labels={data_dir / 'labels.csv'}",
            "--set", f"splits={data_dir / 'splits.csv'}", "--set", "max_epochs=2", "--set", "hidden_dim=8"]
    assert run(["train", "--out", str(tmp_path / "run"), *args]) == 0


def test_energy_trace_file(tmp_path, capsys):
    assert run(["energy", "--config", "gread-diffusion-csbm", "--out", str(tmp_path)]) == 0
    assert len(lines(tmp_path / "energy.csv")) == 42
    assert "final_energy=" in capsys.readouterr().out


def test_energy_divergence_exit_code(tmp_path):
    args = ["--set", "reaction=F", "--set", "tau=5", "--set", "T=200", "--set", "energy_center=false"]
    assert run(["energy", "--out", str(tmp_path), *args]) == 3


def test_export_writes_one_file_per_time(tmp_path):
    assert run(["export", "--out", str(tmp_path), *QUICK]) == 0
    written = sorted(p.name for p in tmp_path.glob("embeddings_t*.csv"))
    assert written == ["embeddings_t0.0.csv", "embeddings_t1.0.csv"]


def test_export_from_checkpoint(tmp_path):
    assert run(["train", "--out", str(tmp_path / "run"), *QUICK]) == 0
    args = ["--set", f"checkpoint={tmp_path / 'run' / 'model.npz'}", "--set", "export_times=0.5"]
    assert run(["export", "--out", str(tmp_path / "export"), *args]) == 0
    header, rows = read_csv(tmp_path / "export" / "embeddings_t0.5.csv")
    assert header == ["node", "label", "c0", "c1", "c2", "c3"]
    assert len(rows) == 100


def test_sweep_and_ablation_files(tmp_path):
    assert run(["sweep", "--out", str(tmp_path), "--jobs", "1", "--set", "sweep_grid=1,2", *QUICK]) == 0
    assert len(lines(tmp_path / "sweep.csv")) == 3
    assert len(lines(tmp_path / "sweep_raw.csv")) == 3
    assert run(["ablation", "--out", str(tmp_path), "--jobs", "2", *QUICK]) == 0
    assert len(lines(tmp_path / "ablation.csv")) == 5


def test_bench_file(tmp_path, capsys):
    args = ["--set", "bench_sizes=100,200", "--set", "bench_repeats=2", "--set", "hidden_dim=4"]
    assert run(["bench", "--out", str(tmp_path), *args]) == 0
    header, rows = read_csv(tmp_path / "bench.csv")
    assert header == ["edges", "ns_per_step"]
    assert len(rows) == 2
    assert capsys.readouterr().out.startswith("loglog_slope=")


def output_bytes(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.glob("*.csv"))}


@pytest.mark.parametrize("command,extra", [
    ("energy", []),
    ("sweep", ["--jobs", "2", "--set", "sweep_grid=1,2", "--set", "n_seeds=2", *QUICK]),
    ("export", QUICK),
])
def test_repeated_commands_write_identical_files(tmp_path, command, extra):
    for name in ("a", "b"):
        assert run([command, "--out", str(tmp_path / name), "--seed", "3", *extra]) == 0
    first = output_bytes(tmp_path / "a")
    assert first
    assert output_bytes(tmp_path / "b") == first


@pytest.mark.parametrize("command,extra", [
    ("train", ["--set", "dropout=0.3", *QUICK]),
    ("energy", ["--set", "energy_center=false"]),
    ("export", QUICK),
])
def test_echoed_config_reproduces_outputs(tmp_path, command, extra):
    assert run([command, "--out", str(tmp_path / "a"), "--seed", "6", *extra]) == 0
    echoed = tmp_path / "a" / "config.json"
    assert run([command, "--config", str(echoed), "--out", str(tmp_path / "b")]) == 0
    assert output_bytes(tmp_path / "b") == output_bytes(tmp_path / "a")
    assert (tmp_path / "b" / "config.json").read_bytes() == echoed.read_bytes()


# ========================================================================
# CONFIGURAÇÃO
# ========================================================================

def test_coercion_by_declared_type():
    assert coerce("tau", "0.25", from_text=True) == 0.25
    assert coerce("lcc", "true", from_text=True) is True
    assert coerce("patience", "none", from_text=True) is None
    assert coerce("sweep_grid", "1,2.5", from_text=True) == [1.0, 2.5]
    assert coerce("max_epochs", 10.0) == 10
    with pytest.raises(ConfigError):
        coerce("max_epochs", "ten", from_text=True)
    with pytest.raises(ConfigError):
        coerce("lr", True)
    with pytest.raises(ConfigError):
        coerce("gamma", 1)


def test_overrides_need_equals_sign():
    with pytest.raises(ConfigError):
        apply_overrides(RunConfig(), ["tau"])
    assert apply_overrides(RunConfig(), ["T = 3"]).T == 3.0


def test_seed_outside_u64_is_config_error(tmp_path, capsys):
    assert run(["generate", "csbm", "--out", str(tmp_path), "--seed", "-1"]) == 1
    assert "seed" in capsys.readouterr().err
    assert run(["generate", "csbm", "--out", str(tmp_path), "--set", "seed=-1"]) == 1
    with pytest.raises(ConfigError):
        coerce("seed", 2 ** 64)
    assert coerce("seed", 2 ** 64 - 1) == 2 ** 64 - 1


def test_frozen_parameters_reach_training_config():
    assert train_config(load_config("gread-diffusion-homophily")).frozen == ("alpha",)
    assert train_config(apply_overrides(RunConfig(), ["frozen=alpha,beta"])).frozen == ("alpha", "beta")
    assert train_config(RunConfig()).frozen == ()


def test_unknown_preset():
    with pytest.raises(ConfigError):
        load_config("no-such-preset")


PRESETS = sorted(p.stem for p in PRESET_DIRS[0].glob("*.json"))


@pytest.mark.parametrize("name", PRESETS)
def test_every_preset_builds_a_configuration(name):
    config = load_config(name)
    if config.reaction != "GcnStep":
        model_config(config, 5)


# ========================================================================
# TENDÊNCIA POR HOMOFILIA
# ========================================================================

HOMOPHILY_LEVELS = [0.1, 0.3, 0.5, 0.7, 0.9]


def mean_test_accuracy(preset, target_h, seeds=(0, 1, 2)):
    accs = []
    for seed in seeds:
        config = apply_overrides(load_config(preset), [f"target_h={target_h}", f"seed={seed}"])
        data = build_dataset(config)
        mcfg = model_config(config, data.n_classes)
        result = fit(mcfg, train_config(config), data)
        accs.append(evaluate(mcfg, result.best_params, data, "test"))
    return 100.0 * float(np.mean(accs))


@pytest.mark.slow
def test_homophily_sweep_trend():
    bs = [mean_test_accuracy("gread-bs-homophily", h) for h in HOMOPHILY_LEVELS]
    diffusion = [mean_test_accuracy("gread-diffusion-homophily", h) for h in HOMOPHILY_LEVELS[:2]]
    assert bs[0] >= diffusion[0] + 2.0
    assert bs[1] >= diffusion[1] + 2.0
    assert all(abs(b - a) <= 10.0 for a, b in zip(bs, bs[1:]))
