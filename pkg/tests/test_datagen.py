import numpy as np
import pytest

from gread.datagen import (
    CsbmConfig, HomophilyConfig, generate_csbm, generate_homophily_graph, load_dataset, load_dataset_dir,
    save_dataset,
)
from gread.errors import ConfigError, DataError
from gread.graph import edge_list, homophily_ratio, n_undirected_edges


def intra_edges(data):
    edges = edge_list(data.graph)
    return int(np.sum(data.labels[edges[:, 0]] == data.labels[edges[:, 1]]))


# ========================================================================
# cSBM
# ========================================================================

def test_csbm_is_edgeless_without_probabilities():
    data = generate_csbm(CsbmConfig(p_intra=0.0, p_inter=0.0))
    assert n_undirected_edges(data.graph) == 0


def test_csbm_with_certain_intra_edges_gives_class_cliques():
    data = generate_csbm(CsbmConfig(n_nodes=12, n_classes=3, p_intra=1.0, p_inter=0.0))
    assert n_undirected_edges(data.graph) == 3 * 6
    assert homophily_ratio(data) == 1.0


def test_csbm_balances_classes_and_features():
    data = generate_csbm(CsbmConfig(n_nodes=90, n_classes=3, feat_dim=4, seed=2))
    np.testing.assert_array_equal(np.bincount(data.labels), [30, 30, 30])
    assert data.features.shape == (90, 4)
    assert np.all(data.train_mask | data.val_mask | data.test_mask)


def test_csbm_is_seed_deterministic():
    first = generate_csbm(CsbmConfig(seed=5))
    second = generate_csbm(CsbmConfig(seed=5))
    other = generate_csbm(CsbmConfig(seed=6))
    np.testing.assert_array_equal(edge_list(first.graph), edge_list(second.graph))
    assert first.features.tobytes() == second.features.tobytes()
    assert not np.array_equal(first.labels, other.labels)


def test_csbm_intra_class_edge_count_matches_expectation():
    counts = [intra_edges(generate_csbm(CsbmConfig(seed=seed))) for seed in range(10)]
    assert abs(np.mean(counts) - 2205.0) <= 3 * 14.85


def test_csbm_config_errors():
    with pytest.raises(ConfigError):
        CsbmConfig(n_nodes=10, n_classes=3)
    with pytest.raises(ConfigError):
        CsbmConfig(p_intra=1.5)
    with pytest.raises(ConfigError):
        CsbmConfig(mu=(0.0,))


# ========================================================================
# GERADOR POR HOMOFILIA
# ========================================================================

def test_full_homophily_keeps_edges_inside_classes():
    data = generate_homophily_graph(HomophilyConfig(n_nodes=300, target_h=1.0, avg_degree=4.0, seed=1))
    assert homophily_ratio(data) >= 0.95


def test_zero_homophily_crosses_classes():
    data = generate_homophily_graph(HomophilyConfig(n_nodes=300, target_h=0.0, avg_degree=4.0, seed=1))
    assert homophily_ratio(data) <= 0.05


def test_half_homophily_in_reference_regime():
    cfg = HomophilyConfig(n_nodes=1480, n_classes=5, target_h=0.5, avg_degree=3.98, seed=0)
    data = generate_homophily_graph(cfg)
    assert 0.45 <= homophily_ratio(data) <= 0.55
    average = 2.0 * n_undirected_edges(data.graph) / data.n_nodes
    assert abs(average - 3.98) <= 0.1 * 3.98


def test_features_can_be_copied_from_a_source(csbm100):
    cfg = HomophilyConfig(n_nodes=50, n_classes=2, avg_degree=3.0, feature_source=csbm100, seed=3)
    data = generate_homophily_graph(cfg)
    source_rows = {row.tobytes(): label for row, label in zip(csbm100.features, csbm100.labels)}
    for row, label in zip(data.features, data.labels):
        assert source_rows[row.tobytes()] == label


def test_homophily_config_errors():
    with pytest.raises(ConfigError):
        HomophilyConfig(target_h=1.2)
    with pytest.raises(ConfigError):
        HomophilyConfig(n_classes=1, target_h=0.5)
    with pytest.raises(ConfigError):
        HomophilyConfig(n_nodes=10, n_classes=5, avg_degree=8.0)


# ========================================================================
# ARQUIVOS
# ========================================================================

def write_dataset(directory, edges="0\t1\n1\t2\n", features="id,x0,x1\n2,5.0,6.0\n0,1.0,2.0\n1,3.0,4.0\n",
                  labels="id,label\n0,0\n1,1\n2,0\n", splits="id,split\n0,train\n1,val\n2,test\n"):
    contents = {"edges.tsv": edges, "features.csv": features, "labels.csv": labels, "splits.csv": splits}
    for name, text in contents.items():
        (directory / name).write_text(text, encoding="utf-8")
    return directory


def test_load_three_node_dataset(tmp_path):
    data = load_dataset_dir(write_dataset(tmp_path))
    np.testing.assert_array_equal(edge_list(data.graph), [[0, 1], [1, 2]])
    np.testing.assert_array_equal(data.features, [[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    np.testing.assert_array_equal(data.labels, [0, 1, 0])
    np.testing.assert_array_equal(data.train_mask, [True, False, False])
    np.testing.assert_array_equal(data.val_mask, [False, True, False])
    np.testing.assert_array_equal(data.test_mask, [False, False, True])


def test_headerless_tables_load_the_same_dataset(tmp_path):
    for name in ("a", "b"):
        (tmp_path / name).mkdir()
    with_header = load_dataset_dir(write_dataset(tmp_path / "a"))
    without = load_dataset_dir(write_dataset(tmp_path / "b", features="2,5.0,6.0\n0,1.0,2.0\n1,3.0,4.0\n",
                                             labels="0,0\n1,1\n2,0\n", splits="0,train\n1,val\n2,test\n"))
    np.testing.assert_array_equal(without.features, with_header.features)
    np.testing.assert_array_equal(without.labels, with_header.labels)
    np.testing.assert_array_equal(without.test_mask, with_header.test_mask)


def test_node_in_two_splits_is_named(tmp_path):
    write_dataset(tmp_path, splits="id,split\n0,train\n1,val\n1,test\n")
    with pytest.raises(DataError, match="nó 1 "):
        load_dataset_dir(tmp_path)


def test_edge_to_missing_node(tmp_path):
    write_dataset(tmp_path, edges="0\t1\n1\t7\n")
    with pytest.raises(DataError, match="7"):
        load_dataset_dir(tmp_path)


def test_missing_label_is_named(tmp_path):
    write_dataset(tmp_path, labels="id,label\n0,0\n1,1\n")
    with pytest.raises(DataError, match="nó 2 sem rótulo"):
        load_dataset_dir(tmp_path)


def test_missing_file_is_data_error(tmp_path):
    write_dataset(tmp_path)
    with pytest.raises(DataError):
        load_dataset(tmp_path / "nope.tsv", tmp_path / "features.csv", tmp_path / "labels.csv",
                     tmp_path / "splits.csv")


def test_lcc_on_load(tmp_path):
    write_dataset(tmp_path, edges="0\t1\n")
    data = load_dataset_dir(tmp_path, lcc=True)
    assert data.n_nodes == 2
    np.testing.assert_array_equal(data.labels, [0, 1])


def test_saved_dataset_reloads_identically(tmp_path, csbm100):
    save_dataset(csbm100, tmp_path / "csbm")
    data = load_dataset_dir(tmp_path / "csbm")
    np.testing.assert_array_equal(edge_list(data.graph), edge_list(csbm100.graph))
    assert data.features.tobytes() == csbm100.features.tobytes()
    np.testing.assert_array_equal(data.labels, csbm100.labels)
    for name in ("train", "val", "test"):
        np.testing.assert_array_equal(data.mask(name), csbm100.mask(name))
