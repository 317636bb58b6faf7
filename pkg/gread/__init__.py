# GREAD - redes neurais de reação-difusão em grafos
from gread.version import __version__
from gread.errors import (
    GreadError, ConfigError, DataError, GraphStructureError, ShapeError, DivergenceError,
)
from gread.graph import SparseGraph, GraphKind, LabeledGraph
from gread.dynamics import ReactionKind, ReactionSpec, CoefMode, Coefficients, SolverConfig, SolverMethod
from gread.attention import AttentionParams, soft_adjacency
from gread.model import (
    AdjacencyMode, ModelConfig, ModelParams, Mode, init_params, forward, predict,
    save_checkpoint, load_checkpoint,
)
from gread.train import TrainConfig, FitResult, fit, cross_entropy, accuracy

__all__ = [
    '__version__',
    'GreadError',
    'ConfigError',
    'DataError',
    'GraphStructureError',
    'ShapeError',
    'DivergenceError',
    'SparseGraph',
    'GraphKind',
    'LabeledGraph',
    'ReactionKind',
    'ReactionSpec',
    'CoefMode',
    'Coefficients',
    'SolverConfig',
    'SolverMethod',
    'AttentionParams',
    'soft_adjacency',
    'AdjacencyMode',
    'ModelConfig',
    'ModelParams',
    'Mode',
    'init_params',
    'forward',
    'predict',
    'save_checkpoint',
    'load_checkpoint',
    'TrainConfig',
    'FitResult',
    'fit',
    'cross_entropy',
    'accuracy',
]
