"""
Rede GREAD - encoder (2x afim+ReLU) -> camada de reação-difusão -> camada de saída
Inclui a configuração do modelo, inicialização, forward, predict e o checkpoint em disco
"""
import json
import weakref
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from gread.attention import AttentionParams, SCALES, soft_adjacency
from gread.dynamics.reaction import (
    CoefMode, Coefficients, OperatorBundle, ReactionSpec, build_operators, parse_mode,
)
from gread.dynamics.solvers import SolverConfig, SolverMethod, integrate
from gread.errors import ConfigError, DataError, DivergenceError, ShapeError
from gread.graph.dataset import LabeledGraph
from gread.graph.sparse import SparseGraph, symmetric_normalize
from gread.utils.seeding import make_rng
from gread.version import __version__

CHECKPOINT_FORMAT = 1


class AdjacencyMode(Enum):
    OA = "OA"
    SA = "SA"

    @classmethod
    def parse(cls, value) -> "AdjacencyMode":
        if isinstance(value, AdjacencyMode):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ConfigError(f"Modo de adjacência desconhecido: {value}") from None


@dataclass(frozen=True)
class ModelConfig:
    hidden_dim: int
    n_classes: int
    reaction: ReactionSpec = ReactionSpec.parse("BS")
    adjacency_mode: AdjacencyMode = AdjacencyMode.OA
    alpha_mode: CoefMode = CoefMode.SC
    beta_mode: CoefMode = CoefMode.SC
    solver: SolverConfig = field(default_factory=SolverConfig)
    input_dropout: float = 0.0
    dropout: float = 0.0
    key_dim: Optional[int] = None
    attention_scale: str = "sqrt"

    def __post_init__(self):
        object.__setattr__(self, 'reaction', ReactionSpec.parse(self.reaction))
        object.__setattr__(self, 'adjacency_mode', AdjacencyMode.parse(self.adjacency_mode))
        object.__setattr__(self, 'alpha_mode', parse_mode(self.alpha_mode))
        object.__setattr__(self, 'beta_mode', parse_mode(self.beta_mode))
        if self.hidden_dim < 1:
            raise ConfigError(f"hidden_dim deve ser >= 1, recebido {self.hidden_dim}")
        if self.n_classes < 1:
            raise ConfigError(f"n_classes deve ser >= 1, recebido {self.n_classes}")
        for name in ("input_dropout", "dropout"):
            p = getattr(self, name)
            if not 0.0 <= p < 1.0:
                raise ConfigError(f"{name} deve estar em [0, 1), recebido {p}")
        if not self.reaction.is_continuous:
            raise ConfigError("GcnStep é apenas uma dinâmica de referência, não um modelo")
        if self.key_dim is not None and self.key_dim < 1:
            raise ConfigError(f"key_dim deve ser >= 1, recebido {self.key_dim}")
        if self.attention_scale not in SCALES:
            raise ConfigError(f"attention_scale desconhecida: {self.attention_scale}")

    @property
    def d_k(self) -> int:
        return self.key_dim or self.hidden_dim

    def to_dict(self) -> dict:
        return {
            "hidden_dim": self.hidden_dim,
            "n_classes": self.n_classes,
            "reaction": self.reaction.kind.value,
            "adjacency_mode": self.adjacency_mode.value,
            "alpha_mode": self.alpha_mode.value,
            "beta_mode": self.beta_mode.value,
            "method": self.solver.method.value,
            "tau": self.solver.tau,
            "T": self.solver.T,
            "input_dropout": self.input_dropout,
            "dropout": self.dropout,
            "key_dim": self.key_dim,
            "attention_scale": self.attention_scale,
        }

    @classmethod
    def from_dict(cls, values: dict) -> "ModelConfig":
        values = dict(values)
        try:
            solver = SolverConfig(SolverMethod.parse(values.pop("method")), float(values.pop("tau")),
                                  float(values.pop("T")))
            return cls(solver=solver, **values)
        except (KeyError, TypeError) as e:
            raise ConfigError(f"Configuração de modelo inválida: {e}") from None


@dataclass(eq=False)
class ModelParams:
    enc_w1: np.ndarray
    enc_b1: np.ndarray
    enc_w2: np.ndarray
    enc_b2: np.ndarray
    out_w: np.ndarray
    out_b: np.ndarray
    coeffs: Coefficients
    attn: Optional[AttentionParams] = None

    def names(self) -> List[str]:
        names = ["enc_w1", "enc_b1", "enc_w2", "enc_b2", "out_w", "out_b"]
        if self.attn is not None:
            names += ["attn_w_key", "attn_w_query"]
        return names + ["alpha", "beta"]

    def arrays(self) -> Dict[str, np.ndarray]:
        """Parâmetros na ordem declarada"""
        values = {
            "enc_w1": self.enc_w1, "enc_b1": self.enc_b1,
            "enc_w2": self.enc_w2, "enc_b2": self.enc_b2,
            "out_w": self.out_w, "out_b": self.out_b,
        }
        if self.attn is not None:
            values["attn_w_key"] = self.attn.w_key
            values["attn_w_query"] = self.attn.w_query
        values["alpha"] = self.coeffs.alpha
        values["beta"] = self.coeffs.beta
        return values

    def replace(self, arrays: Dict[str, np.ndarray]) -> "ModelParams":
        merged = {**self.arrays(), **arrays}
        attn = None
        if self.attn is not None:
            attn = AttentionParams(merged["attn_w_key"], merged["attn_w_query"])
        coeffs = Coefficients(merged["alpha"], merged["beta"], self.coeffs.alpha_mode, self.coeffs.beta_mode)
        return ModelParams(
            np.asarray(merged["enc_w1"], dtype=np.float64), np.asarray(merged["enc_b1"], dtype=np.float64),
            np.asarray(merged["enc_w2"], dtype=np.float64), np.asarray(merged["enc_b2"], dtype=np.float64),
            np.asarray(merged["out_w"], dtype=np.float64), np.asarray(merged["out_b"], dtype=np.float64),
            coeffs, attn,
        )

    def copy(self) -> "ModelParams":
        return self.replace({name: value.copy() for name, value in self.arrays().items()})


def _glorot(rng, fan_in, fan_out):
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def init_params(cfg: ModelConfig, n_features: int, n_nodes: int, seed) -> ModelParams:
    """Pesos afins uniformes em ±√(6/(fan_in+fan_out)), vieses zero, α = β = 1"""
    rng = make_rng(seed)
    d = cfg.hidden_dim
    enc_w1 = _glorot(rng, n_features, d)
    enc_w2 = _glorot(rng, d, d)
    out_w = _glorot(rng, d, cfg.n_classes)
    attn = None
    if cfg.adjacency_mode is AdjacencyMode.SA:
        attn = AttentionParams(_glorot(rng, d, cfg.d_k), _glorot(rng, d, cfg.d_k))
    coeffs = Coefficients.create(n_nodes, cfg.alpha_mode, cfg.beta_mode, alpha=1.0, beta=1.0)
    return ModelParams(enc_w1, np.zeros(d), enc_w2, np.zeros(d), out_w, np.zeros(cfg.n_classes), coeffs, attn)


@dataclass(frozen=True)
class Mode:
    training: bool
    seed: int = 0

    @classmethod
    def train(cls, seed: int) -> "Mode":
        return cls(True, int(seed))

    @classmethod
    def eval(cls) -> "Mode":
        return cls(False, 0)


@dataclass(eq=False)
class ForwardCache:
    """Intermediários guardados para a retropropagação"""
    x_in: np.ndarray
    input_mask: Optional[np.ndarray]
    z1: np.ndarray
    a1: np.ndarray
    z2: np.ndarray
    h0: np.ndarray
    ops: OperatorBundle
    soft: Optional[SparseGraph]
    states: Optional[List[np.ndarray]]
    h_final: np.ndarray
    output_mask: Optional[np.ndarray]
    h_out: np.ndarray


_NORMALIZED = weakref.WeakKeyDictionary()


def normalized_adjacency(data: LabeledGraph) -> SparseGraph:
    """A simetricamente normalizada, calculada uma vez por dataset"""
    cached = _NORMALIZED.get(data)
    if cached is None:
        cached = symmetric_normalize(data.graph)
        _NORMALIZED[data] = cached
    return cached


def _dropout_mask(rng, shape, p):
    if p <= 0.0:
        return None
    return (rng.random(shape) >= p).astype(np.float64) / (1.0 - p)


def check_shapes(cfg: ModelConfig, params: ModelParams, data: LabeledGraph) -> None:
    if params.enc_w1.shape != (data.n_features, cfg.hidden_dim):
        raise ShapeError(f"Encoder espera {params.enc_w1.shape[0]} features, dataset tem {data.n_features}")
    if params.out_w.shape != (cfg.hidden_dim, cfg.n_classes):
        raise ShapeError(f"Camada de saída {params.out_w.shape} incompatível com a configuração")
    if (params.attn is not None) != (cfg.adjacency_mode is AdjacencyMode.SA):
        raise ShapeError("Parâmetros de atenção presentes sse adjacency_mode == SA")
    params.coeffs.check(data.n_nodes)


def forward(cfg: ModelConfig, params: ModelParams, data: LabeledGraph, mode: Mode = Mode.eval(),
            trace: Optional[bool] = None):
    """Logits (softmax fica na perda) e o cache para backward"""
    check_shapes(cfg, params, data)
    trace = mode.training if trace is None else trace
    rng = make_rng(mode.seed) if mode.training else None

    input_mask = _dropout_mask(rng, data.features.shape, cfg.input_dropout) if mode.training else None
    x_in = data.features if input_mask is None else data.features * input_mask
    z1 = x_in @ params.enc_w1 + params.enc_b1
    a1 = np.maximum(z1, 0.0)
    z2 = a1 @ params.enc_w2 + params.enc_b2
    h0 = np.maximum(z2, 0.0)

    soft = None
    if cfg.adjacency_mode is AdjacencyMode.SA:
        soft = soft_adjacency(params.attn, data.graph, h0, cfg.attention_scale)
        adjacency = soft
    else:
        adjacency = normalized_adjacency(data)
    ops = build_operators(adjacency, cfg.reaction, h0)

    try:
        h_final, states = integrate(cfg.reaction, ops, params.coeffs, cfg.solver, h0, trace=trace)
    except DivergenceError as e:
        raise e.with_context("forward") from None

    output_mask = _dropout_mask(rng, h_final.shape, cfg.dropout) if mode.training else None
    h_out = h_final if output_mask is None else h_final * output_mask
    logits = h_out @ params.out_w + params.out_b
    cache = ForwardCache(x_in, input_mask, z1, a1, z2, h0, ops, soft, states, h_final, output_mask, h_out)
    return logits, cache


def predict(cfg: ModelConfig, params: ModelParams, data: LabeledGraph) -> np.ndarray:
    """Classe por nó; empates vão para o menor índice de classe"""
    logits, _ = forward(cfg, params, data, Mode.eval(), trace=False)
    return np.argmax(logits, axis=1)


# ========================================================================
# CHECKPOINT
# ========================================================================
#
# Arquivo .npz (numpy) com as chaves:
#   format_version  int      versão do contêiner (1)
#   gread_version   str      versão do pacote que gravou
#   config_json     str      ModelConfig.to_dict() em JSON com chaves ordenadas
#   param_order     str[]    nomes dos parâmetros na ordem declarada
#   alpha_mode, beta_mode    "SC" | "VC"
#   <nome>          float64  um array por parâmetro, na ordem de param_order:
#                            enc_w1, enc_b1, enc_w2, enc_b2, out_w, out_b,
#                            [attn_w_key, attn_w_query], alpha, beta

def save_checkpoint(path, cfg: ModelConfig, params: ModelParams) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    arrays = params.arrays()
    with open(path, 'wb') as f:
        np.savez(
            f,
            format_version=np.array(CHECKPOINT_FORMAT),
            gread_version=np.array(__version__),
            config_json=np.array(json.dumps(cfg.to_dict(), sort_keys=True)),
            param_order=np.array(list(arrays.keys())),
            alpha_mode=np.array(params.coeffs.alpha_mode.value),
            beta_mode=np.array(params.coeffs.beta_mode.value),
            **arrays,
        )
    return path


def load_checkpoint(path):
    """Retorna (ModelConfig, ModelParams)"""
    try:
        with np.load(path, allow_pickle=False) as archive:
            version = int(archive["format_version"])
            if version != CHECKPOINT_FORMAT:
                raise DataError(f"Versão de checkpoint não suportada: {version}")
            cfg = ModelConfig.from_dict(json.loads(str(archive["config_json"])))
            order = [str(name) for name in archive["param_order"]]
            arrays = {name: np.array(archive[name], dtype=np.float64) for name in order}
            alpha_mode = CoefMode(str(archive["alpha_mode"]))
            beta_mode = CoefMode(str(archive["beta_mode"]))
    except (OSError, KeyError, ValueError) as e:
        if isinstance(e, DataError):
            raise
        raise DataError(f"Checkpoint ilegível {path}: {e}") from None

    attn = None
    if "attn_w_key" in arrays:
        attn = AttentionParams(arrays["attn_w_key"], arrays["attn_w_query"])
    params = ModelParams(
        arrays["enc_w1"], arrays["enc_b1"], arrays["enc_w2"], arrays["enc_b2"],
        arrays["out_w"], arrays["out_b"],
        Coefficients(arrays["alpha"], arrays["beta"], alpha_mode, beta_mode), attn,
    )
    return cfg, params
