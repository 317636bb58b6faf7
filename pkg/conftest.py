import numpy as np
import pytest

from gread.datagen.csbm import CsbmConfig, generate_csbm
from gread.graph.dataset import LabeledGraph, stratified_split
from gread.graph.sparse import from_edges


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: suítes longas (gradientes completos, benchmark)")


@pytest.fixture(autouse=True)
def isolated_logs(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("GREAD_LOG_DIR", str(tmp_path_factory.mktemp("logs")))
    monkeypatch.delenv("GREAD_VERBOSE", raising=False)


@pytest.fixture
def k2():
    return from_edges(2, [[0, 1]])


@pytest.fixture
def p3():
    return from_edges(3, [[0, 1], [1, 2]])


def small_graph(n_nodes=20, n_features=4, n_classes=2, seed=3) -> LabeledGraph:
    """Grafo de 20 nós com features de escala moderada"""
    rng = np.random.default_rng(seed)
    base = generate_csbm(CsbmConfig(n_nodes=n_nodes, n_classes=n_classes, feat_dim=1, p_intra=0.4,
                                    p_inter=0.08, seed=seed))
    features = 0.5 * rng.standard_normal((n_nodes, n_features)) + 0.3 * base.labels[:, None]
    train, val, test = stratified_split(base.labels, rng)
    return LabeledGraph(base.graph, features, base.labels, train, val, test)


@pytest.fixture
def graph20():
    return small_graph()


@pytest.fixture
def csbm100():
    return generate_csbm(CsbmConfig(seed=0))
