"""
Micro-benchmark do lado direito f(H) em grafos regulares aleatórios de tamanho crescente
"""
import time
from typing import List, Sequence

import numpy as np

from gread.dynamics.reaction import Coefficients, ReactionSpec, build_operators, rhs
from gread.errors import ConfigError
from gread.graph.builders import random_regular_graph
from gread.graph.sparse import symmetric_normalize
from gread.utils.logs import log_message
from gread.utils.seeding import derive_seed, make_rng

BENCH_HEADER = ["edges", "ns_per_step"]


def nodes_for_edges(n_edges: int, degree: int) -> int:
    """Menor N com N·degree/2 >= n_edges e N·degree par"""
    n = max(degree + 1, -(-2 * n_edges // degree))
    if (n * degree) % 2:
        n += 1
    return n


def time_rhs(spec: ReactionSpec, ops, coeffs, h, repeats: int) -> int:
    rhs(spec, ops, coeffs, h)
    samples = []
    for _ in range(repeats):
        started = time.perf_counter_ns()
        rhs(spec, ops, coeffs, h)
        samples.append(time.perf_counter_ns() - started)
    return int(np.median(samples))


def scaling_bench(sizes: Sequence[int], reaction, degree: int = 4, repeats: int = 7, hidden_dim: int = 16,
                  seed: int = 0) -> List[list]:
    """Linhas (arestas, mediana de ns por avaliação de f)"""
    if not sizes:
        raise ConfigError("Benchmark exige ao menos um tamanho")
    if degree < 1 or repeats < 1:
        raise ConfigError(f"degree e repeats devem ser >= 1 ({degree}, {repeats})")
    spec = ReactionSpec.parse(reaction)
    rows = []
    for index, size in enumerate(sizes):
        n = nodes_for_edges(int(size), degree)
        graph = random_regular_graph(n, degree, derive_seed(seed, index))
        h = make_rng(derive_seed(seed, index, 1)).standard_normal((n, hidden_dim))
        ops = build_operators(symmetric_normalize(graph), spec, h)
        edges = graph.nnz // 2
        ns = time_rhs(spec, ops, Coefficients.create(n), h, repeats)
        log_message(f"[BENCH] {spec.kind.value}: {edges} arestas, {ns} ns por passo")
        rows.append([edges, ns])
    return rows


def loglog_slope(rows: Sequence[Sequence[float]]) -> float:
    """Inclinação do ajuste linear de log(ns) contra log(arestas); ~1 para custo linear"""
    if len(rows) < 2:
        raise ConfigError("Inclinação exige ao menos dois tamanhos")
    edges = np.log([float(row[0]) for row in rows])
    ns = np.log([float(row[1]) for row in rows])
    return float(np.polyfit(edges, ns, 1)[0])
