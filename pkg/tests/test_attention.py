import numpy as np
import pytest

from gread.attention import (
    AttentionParams, attention_pattern, row_softmax, score_scale, soft_adjacency, soft_adjacency_vjp,
)
from gread.errors import ConfigError, ShapeError
from gread.graph import GraphKind, from_edges, symmetric_normalize


@pytest.fixture
def star():
    return from_edges(5, [[0, 1], [0, 2], [0, 3]])


def params(rng, d=3, d_k=2):
    return AttentionParams(rng.standard_normal((d, d_k)), rng.standard_normal((d, d_k)))


def test_soft_adjacency_is_row_stochastic_on_edges_plus_self_loops(star):
    rng = np.random.default_rng(0)
    h = rng.standard_normal((5, 3))
    soft = soft_adjacency(params(rng), star, h)
    dense = soft.to_dense()
    assert soft.kind is GraphKind.ROW_STOCHASTIC
    np.testing.assert_allclose(dense.sum(axis=1), np.ones(5), atol=1e-12)
    pattern = (star.to_dense() + np.eye(5)) > 0
    np.testing.assert_array_equal(dense > 0, pattern)
    # o nó 4 é isolado e só atende a si mesmo
    assert dense[4, 4] == 1.0


def test_equal_scores_give_uniform_rows(star):
    zero = AttentionParams(np.zeros((3, 2)), np.zeros((3, 2)))
    dense = soft_adjacency(zero, star, np.ones((5, 3))).to_dense()
    np.testing.assert_allclose(dense[0, [0, 1, 2, 3]], np.full(4, 0.25))
    np.testing.assert_allclose(dense[1, [0, 1]], [0.5, 0.5])


def test_scale_modes():
    assert score_scale(4, "sqrt") == 2.0
    assert score_scale(4, "linear") == 4.0
    with pytest.raises(ConfigError):
        score_scale(4, "cubic")


def test_attention_requires_raw_graph_and_matching_shapes(star):
    rng = np.random.default_rng(1)
    with pytest.raises(ConfigError):
        attention_pattern(symmetric_normalize(star))
    with pytest.raises(ShapeError):
        soft_adjacency(params(rng), star, np.ones((5, 4)))
    with pytest.raises(ShapeError):
        AttentionParams(np.ones((3, 2)), np.ones((3, 3)))


@pytest.mark.parametrize("scale", ["sqrt", "linear"])
def test_vjp_matches_finite_differences(star, scale):
    rng = np.random.default_rng(2)
    p = params(rng)
    h = rng.standard_normal((5, 3))
    soft = soft_adjacency(p, star, h, scale)
    weights = rng.standard_normal(soft.nnz)

    def objective(w_key, w_query, state):
        return float(np.dot(weights, soft_adjacency(AttentionParams(w_key, w_query), star, state, scale).values))

    d_h, d_key, d_query = soft_adjacency_vjp(p, soft, h, weights, scale)
    step = 1e-6
    for analytic, which in ((d_key, 0), (d_query, 1), (d_h, 2)):
        args = [p.w_key, p.w_query, h]
        numeric = np.zeros_like(args[which])
        for index in np.ndindex(numeric.shape):
            plus = [a.copy() for a in args]
            minus = [a.copy() for a in args]
            plus[which][index] += step
            minus[which][index] -= step
            numeric[index] = (objective(*plus) - objective(*minus)) / (2 * step)
        np.testing.assert_allclose(analytic, numeric, atol=1e-7)


def test_two_neighbor_scores_a_log_two_apart():
    pattern = attention_pattern(from_edges(2, [[0, 1]]))
    s = 0.7
    weights = row_softmax(pattern, np.array([s, s + np.log(2.0), s, s]))
    np.testing.assert_allclose(weights[:2], [1.0 / 3.0, 2.0 / 3.0], atol=1e-12)
    np.testing.assert_allclose(weights[2:], [0.5, 0.5], atol=1e-12)


def test_row_constant_leaves_weights_unchanged(star):
    rng = np.random.default_rng(4)
    pattern = attention_pattern(star)
    scores = rng.standard_normal(pattern.nnz)
    shift = np.repeat(rng.uniform(-50.0, 50.0, pattern.n_nodes), np.diff(pattern.matrix.indptr))
    np.testing.assert_allclose(row_softmax(pattern, scores + shift), row_softmax(pattern, scores), atol=1e-12)
