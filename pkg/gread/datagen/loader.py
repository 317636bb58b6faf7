"""
Leitura e escrita de datasets em disco - lista de arestas TSV + CSVs de features, rótulos e splits
"""
from pathlib import Path
from typing import Dict

import numpy as np

from gread.errors import DataError
from gread.graph.dataset import SPLIT_NAMES, LabeledGraph, largest_connected_component
from gread.graph.sparse import edge_list, from_edges
from gread.utils.csvio import read_csv, write_csv
from gread.utils.logs import log_message

DATASET_FILES = {
    "edges": "edges.tsv",
    "features": "features.csv",
    "labels": "labels.csv",
    "splits": "splits.csv",
}


def _int(text, where):
    try:
        return int(text)
    except (TypeError, ValueError):
        raise DataError(f"{where}: inteiro esperado, recebido {text!r}") from None


def read_edges(path) -> np.ndarray:
    pairs = []
    try:
        with open(path, 'r', encoding='utf-8') as f:
            for number, line in enumerate(f, start=1):
                line = line.strip()
                if not line or line.startswith('#'):
                    continue
                fields = line.split()
                if len(fields) != 2:
                    raise DataError(f"{path}:{number}: esperado 'src<TAB>dst', recebido {line!r}")
                pairs.append((_int(fields[0], f"{path}:{number}"), _int(fields[1], f"{path}:{number}")))
    except OSError as e:
        raise DataError(f"Não foi possível ler {path}: {e}") from None
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)


def _is_int(text) -> bool:
    try:
        int(text)
    except (TypeError, ValueError):
        return False
    return True


def _read_table(path):
    """Linhas de dados de um CSV com id de nó na primeira coluna; o cabeçalho é opcional"""
    try:
        header, rows = read_csv(path)
    except OSError as e:
        raise DataError(f"Não foi possível ler {path}: {e}") from None
    if header and _is_int(header[0]):
        return None, [header] + rows
    return header, rows


def read_features(path) -> np.ndarray:
    _, rows = _read_table(path)
    if not rows:
        raise DataError(f"{path}: arquivo de features vazio")
    ids = np.array([_int(row[0], f"{path}: id") for row in rows])
    order = np.argsort(ids, kind='stable')
    if not np.array_equal(ids[order], np.arange(ids.size)):
        raise DataError(f"{path}: ids de nó devem ser 0..{ids.size - 1} sem repetição")
    widths = {len(row) for row in rows}
    if len(widths) != 1 or widths.pop() < 2:
        raise DataError(f"{path}: todas as linhas precisam do mesmo número de features (>= 1)")
    try:
        values = np.array([[float(v) for v in row[1:]] for row in rows])
    except ValueError as e:
        raise DataError(f"{path}: feature não numérica ({e})") from None
    return values[order]


def _check_node(node, n_nodes, path):
    if not 0 <= node < n_nodes:
        raise DataError(f"{path}: nó {node} inexistente (o grafo tem {n_nodes} nós)")


def read_labels(path, n_nodes: int) -> np.ndarray:
    _, rows = _read_table(path)
    labels = np.full(n_nodes, -1, dtype=np.int64)
    for row in rows:
        node = _int(row[0], f"{path}: id")
        _check_node(node, n_nodes, path)
        labels[node] = _int(row[1] if len(row) > 1 else None, f"{path}: rótulo do nó {node}")
        if labels[node] < 0:
            raise DataError(f"{path}: rótulo negativo no nó {node}")
    missing = np.flatnonzero(labels < 0)
    if missing.size:
        raise DataError(f"{path}: nó {int(missing[0])} sem rótulo")
    return labels


def read_splits(path, n_nodes: int):
    _, rows = _read_table(path)
    masks = {name: np.zeros(n_nodes, dtype=bool) for name in SPLIT_NAMES}
    assigned = np.zeros(n_nodes, dtype=bool)
    for row in rows:
        node = _int(row[0], f"{path}: id")
        _check_node(node, n_nodes, path)
        split = row[1].strip() if len(row) > 1 else ""
        if split not in masks:
            raise DataError(f"{path}: split desconhecido {split!r} no nó {node}")
        if assigned[node]:
            raise DataError(f"{path}: nó {node} aparece em mais de um split")
        assigned[node] = True
        masks[split][node] = True
    return tuple(masks[name] for name in SPLIT_NAMES)


def load_dataset(edge_path, feature_path, label_path, split_path, lcc: bool = False) -> LabeledGraph:
    features = read_features(feature_path)
    n = features.shape[0]
    edges = read_edges(edge_path)
    if edges.size:
        bad = edges[(edges < 0) | (edges >= n)]
        if bad.size:
            raise DataError(f"{edge_path}: aresta com nó {int(bad[0])} inexistente (o grafo tem {n} nós)")
    labels = read_labels(label_path, n)
    train, val, test = read_splits(split_path, n)
    data = LabeledGraph(from_edges(n, edges), features, labels, train, val, test)
    if lcc:
        data = largest_connected_component(data)
    log_message(f"[DATAGEN] Dataset carregado de {edge_path}: {data.n_nodes} nós (lcc={lcc})")
    return data


def load_dataset_dir(directory, lcc: bool = False) -> LabeledGraph:
    directory = Path(directory)
    return load_dataset(*(directory / DATASET_FILES[key] for key in ("edges", "features", "labels", "splits")),
                        lcc=lcc)


def save_dataset(data: LabeledGraph, directory) -> Dict[str, Path]:
    """Grava os quatro arquivos em `directory`; load_dataset_dir relê o mesmo LabeledGraph"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {key: directory / name for key, name in DATASET_FILES.items()}

    with open(paths["edges"], 'w', encoding='utf-8', newline='') as f:
        f.write(f"# gread edge list: {data.n_nodes} nodes\n")
        for src, dst in edge_list(data.graph):
            f.write(f"{src}\t{dst}\n")

    node_ids = range(data.n_nodes)
    write_csv(paths["features"], ["id"] + [f"x{k}" for k in range(data.n_features)],
              ([i, *data.features[i]] for i in node_ids))
    write_csv(paths["labels"], ["id", "label"], ([i, data.labels[i]] for i in node_ids))
    split_rows = []
    for i in node_ids:
        for name in SPLIT_NAMES:
            if data.mask(name)[i]:
                split_rows.append([i, name])
    write_csv(paths["splits"], ["id", "split"], split_rows)
    return paths
