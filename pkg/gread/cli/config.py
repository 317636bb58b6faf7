"""
Configuração de execução - RunConfig, presets JSON, overrides --set e construção de dados/modelo
"""
import json
import os
import sys
import typing
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import List, Optional

from gread.datagen.csbm import CsbmConfig, generate_csbm
from gread.datagen.homophily import HomophilyConfig, generate_homophily_graph
from gread.datagen.loader import load_dataset
from gread.dynamics.solvers import SolverConfig
from gread.errors import ConfigError
from gread.graph.dataset import largest_connected_component
from gread.model import ModelConfig
from gread.train.loop import TrainConfig

PRESET_DIRS = (
    Path(__file__).resolve().parents[2] / "config" / "presets",
    Path(sys.prefix) / "config" / "presets",
)
DATASETS = ("csbm", "homophily", "grid", "files")
SEED_LIMIT = 2 ** 64


@dataclass
class RunConfig:
    # modelo
    hidden_dim: int = 16
    reaction: str = "BS"
    adjacency_mode: str = "OA"
    alpha_mode: str = "SC"
    beta_mode: str = "SC"
    method: str = "Euler"
    tau: float = 1.0
    T: float = 1.0
    input_dropout: float = 0.0
    dropout: float = 0.0
    key_dim: Optional[int] = None
    attention_scale: str = "sqrt"
    # treino
    lr: float = 0.01
    weight_decay: float = 0.0
    max_epochs: int = 200
    seed: int = 0
    patience: Optional[int] = None
    frozen: List[str] = field(default_factory=list)
    # dados
    dataset: str = "csbm"
    edges: str = ""
    features: str = ""
    labels: str = ""
    splits: str = ""
    lcc: bool = False
    csbm_nodes: int = 100
    csbm_classes: int = 2
    csbm_feat_dim: int = 2
    csbm_mu: List[float] = field(default_factory=list)
    csbm_sigma: float = 2.0
    csbm_p_intra: float = 0.9
    csbm_p_inter: float = 0.1
    homophily_nodes: int = 1480
    homophily_classes: int = 5
    target_h: float = 0.5
    avg_degree: float = 3.98
    homophily_feat_dim: int = 16
    feature_sigma: float = 1.0
    grid_width: int = 20
    grid_height: int = 20
    # análise
    sweep_param: str = "T"
    sweep_grid: List[float] = field(default_factory=list)
    n_seeds: int = 1
    export_times: List[float] = field(default_factory=list)
    checkpoint: str = ""
    bench_sizes: List[int] = field(default_factory=lambda: [1000, 2000, 4000, 8000, 16000])
    bench_degree: int = 4
    bench_repeats: int = 7
    energy_center: bool = True
    energy_alpha: float = 1.0
    energy_beta: float = 1.0
    ablation_adjacency: List[str] = field(default_factory=lambda: ["OA", "SA"])
    ablation_beta: List[str] = field(default_factory=lambda: ["SC", "VC"])
    # execução
    jobs: Optional[int] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"


def _field_types():
    return typing.get_type_hints(RunConfig)


def _unwrap(kind):
    """(tipo base, é lista, aceita None)"""
    args = typing.get_args(kind)
    optional = typing.get_origin(kind) is typing.Union and type(None) in args
    if optional:
        kind = next(a for a in args if a is not type(None))
    if typing.get_origin(kind) in (list, List):
        return typing.get_args(kind)[0], True, optional
    return kind, False, optional


def _scalar_from_text(key, base, text):
    text = text.strip()
    try:
        if base is bool:
            lowered = text.lower()
            if lowered in ("true", "1", "yes"):
                return True
            if lowered in ("false", "0", "no"):
                return False
            raise ValueError(text)
        return base(text)
    except ValueError:
        raise ConfigError(f"Valor inválido para '{key}': {text!r} (esperado {base.__name__})") from None


def _scalar_from_json(key, base, value):
    if base is bool:
        if isinstance(value, bool):
            return value
    elif base is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
        if isinstance(value, float) and value.is_integer():
            return int(value)
    elif base is float:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif base is str:
        if isinstance(value, str):
            return value
    raise ConfigError(f"Valor inválido para '{key}': {value!r} (esperado {base.__name__})")


def _coerce_value(key: str, value, from_text: bool):
    types = _field_types()
    if key not in types:
        raise ConfigError(f"Chave de configuração desconhecida: '{key}'")
    base, is_list, optional = _unwrap(types[key])
    if from_text:
        if optional and value.strip().lower() in ("", "none", "null"):
            return None
        if is_list:
            return [_scalar_from_text(key, base, item) for item in value.split(",") if item.strip()]
        return _scalar_from_text(key, base, value)
    if value is None:
        if optional:
            return None
        raise ConfigError(f"'{key}' não aceita null")
    if is_list:
        if isinstance(value, str):
            return _coerce_value(key, value, True)
        if not isinstance(value, list):
            raise ConfigError(f"'{key}' deve ser uma lista")
        return [_scalar_from_json(key, base, item) for item in value]
    return _scalar_from_json(key, base, value)


def check_seed(seed: int) -> int:
    """Sementes são inteiros sem sinal de 64 bits"""
    if not 0 <= seed < SEED_LIMIT:
        raise ConfigError(f"seed deve estar em [0, 2^64), recebido {seed}")
    return seed


def coerce(key: str, value, from_text: bool = False):
    value = _coerce_value(key, value, from_text)
    if key == "seed":
        return check_seed(value)
    return value


def resolve_config_path(name_or_path: str) -> Path:
    """Caminho existente ou nome de preset em config/presets"""
    path = Path(name_or_path)
    if path.is_file():
        return path
    for preset_dir in PRESET_DIRS:
        preset = preset_dir / f"{name_or_path}.json"
        if preset.is_file():
            return preset
    raise ConfigError(f"Configuração não encontrada: {name_or_path}")


def load_config(name_or_path: Optional[str] = None) -> RunConfig:
    config = RunConfig()
    if not name_or_path:
        return config
    path = resolve_config_path(name_or_path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            values = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Não foi possível ler {path}: {e}") from None
    if not isinstance(values, dict):
        raise ConfigError(f"{path}: esperado um objeto JSON")
    return replace(config, **{key: coerce(key, value) for key, value in values.items()})


def apply_overrides(config: RunConfig, overrides: List[str]) -> RunConfig:
    """Aplica pares key=value, convertidos pelo tipo declarado do campo"""
    updates = {}
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"Override sem '=': {item!r}")
        key, text = item.split("=", 1)
        updates[key.strip()] = coerce(key.strip(), text, from_text=True)
    return replace(config, **updates)


def write_config(config: RunConfig, out_dir) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "config.json"
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(config.to_json())
    return path


def default_out_dir() -> Path:
    return Path(os.getenv('GREAD_OUT', '') or "gread-out")


# ========================================================================
# CONSTRUÇÃO DE OBJETOS A PARTIR DA CONFIGURAÇÃO
# ========================================================================

def solver_config(config: RunConfig) -> SolverConfig:
    return SolverConfig(config.method, config.tau, config.T)


def model_config(config: RunConfig, n_classes: int) -> ModelConfig:
    return ModelConfig(
        hidden_dim=config.hidden_dim,
        n_classes=n_classes,
        reaction=config.reaction,
        adjacency_mode=config.adjacency_mode,
        alpha_mode=config.alpha_mode,
        beta_mode=config.beta_mode,
        solver=solver_config(config),
        input_dropout=config.input_dropout,
        dropout=config.dropout,
        key_dim=config.key_dim,
        attention_scale=config.attention_scale,
    )


def train_config(config: RunConfig) -> TrainConfig:
    return TrainConfig(config.lr, config.weight_decay, config.max_epochs, config.seed, config.patience,
                       tuple(config.frozen))


def csbm_config(config: RunConfig) -> CsbmConfig:
    return CsbmConfig(
        n_nodes=config.csbm_nodes,
        n_classes=config.csbm_classes,
        feat_dim=config.csbm_feat_dim,
        mu=tuple(config.csbm_mu) or None,
        sigma=config.csbm_sigma,
        p_intra=config.csbm_p_intra,
        p_inter=config.csbm_p_inter,
        seed=config.seed,
    )


def homophily_config(config: RunConfig) -> HomophilyConfig:
    return HomophilyConfig(
        n_nodes=config.homophily_nodes,
        n_classes=config.homophily_classes,
        target_h=config.target_h,
        avg_degree=config.avg_degree,
        feat_dim=config.homophily_feat_dim,
        feature_sigma=config.feature_sigma,
        seed=config.seed,
    )


def build_dataset(config: RunConfig):
    if config.dataset == "csbm":
        data = generate_csbm(csbm_config(config))
    elif config.dataset == "homophily":
        data = generate_homophily_graph(homophily_config(config))
    elif config.dataset == "files":
        missing = [key for key in ("edges", "features", "labels", "splits") if not getattr(config, key)]
        if missing:
            raise ConfigError(f"dataset=files exige o caminho '{missing[0]}'")
        return load_dataset(config.edges, config.features, config.labels, config.splits, config.lcc)
    elif config.dataset == "grid":
        raise ConfigError("dataset=grid só é usado pelo comando generate")
    else:
        raise ConfigError(f"Dataset desconhecido: {config.dataset} (use {', '.join(DATASETS)})")
    return largest_connected_component(data) if config.lcc else data
