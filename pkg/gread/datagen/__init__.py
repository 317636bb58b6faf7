# Datagen module init
from gread.datagen.csbm import CsbmConfig, generate_csbm
from gread.datagen.homophily import HomophilyConfig, generate_homophily_graph
from gread.datagen.loader import (
    DATASET_FILES, load_dataset, load_dataset_dir, save_dataset,
    read_edges, read_features, read_labels, read_splits,
)

__all__ = [
    'CsbmConfig',
    'generate_csbm',
    'HomophilyConfig',
    'generate_homophily_graph',
    'DATASET_FILES',
    'load_dataset',
    'load_dataset_dir',
    'save_dataset',
    'read_edges',
    'read_features',
    'read_labels',
    'read_splits',
]
