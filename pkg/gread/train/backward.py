"""
Retropropagação manual - camada de saída, dropout, passos do integrador, atenção e encoder
"""
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from gread.attention import soft_adjacency_vjp
from gread.dynamics.reaction import ReactionKind
from gread.dynamics.solvers import integrate_vjp
from gread.errors import ConfigError, DivergenceError
from gread.model import AdjacencyMode, ForwardCache, Mode, ModelConfig, ModelParams, forward
from gread.train.loss import cross_entropy


@dataclass(eq=False)
class GradientBundle:
    """Um gradiente por parâmetro, com os mesmos nomes e formas de ModelParams.arrays()"""
    arrays: Dict[str, np.ndarray]

    def __getitem__(self, name: str) -> np.ndarray:
        return self.arrays[name]

    def names(self):
        return list(self.arrays.keys())

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(g)) for g in self.arrays.values())


def backward(cfg: ModelConfig, params: ModelParams, cache: ForwardCache, dlogits: np.ndarray) -> GradientBundle:
    if cache.states is None:
        raise ConfigError("backward exige um forward com trilha de estados (trace=True)")
    dlogits = np.asarray(dlogits, dtype=np.float64)

    d_out_w = cache.h_out.T @ dlogits
    d_out_b = dlogits.sum(axis=0)
    d_h_final = dlogits @ params.out_w.T
    if cache.output_mask is not None:
        d_h_final = d_h_final * cache.output_mask

    sa = cfg.adjacency_mode is AdjacencyMode.SA
    flow = integrate_vjp(cfg.reaction, cache.ops, params.coeffs, cfg.solver, cache.states, d_h_final,
                         adjacency_grad=sa)
    d_h0 = flow.h0
    if cfg.reaction.kind is ReactionKind.ST:
        d_h0 = d_h0 + flow.source

    grads = {}
    if sa:
        d_values = flow.adjacency if flow.adjacency is not None else np.zeros(cache.soft.nnz)
        d_h_attn, d_w_key, d_w_query = soft_adjacency_vjp(params.attn, cache.soft, cache.h0, d_values,
                                                          cfg.attention_scale)
        d_h0 = d_h0 + d_h_attn
        grads["attn_w_key"] = d_w_key
        grads["attn_w_query"] = d_w_query

    d_z2 = d_h0 * (cache.z2 > 0)
    d_a1 = d_z2 @ params.enc_w2.T
    d_z1 = d_a1 * (cache.z1 > 0)

    arrays = {
        "enc_w1": cache.x_in.T @ d_z1,
        "enc_b1": d_z1.sum(axis=0),
        "enc_w2": cache.a1.T @ d_z2,
        "enc_b2": d_z2.sum(axis=0),
        "out_w": d_out_w,
        "out_b": d_out_b,
        **grads,
        "alpha": flow.alpha,
        "beta": flow.beta,
    }
    bundle = GradientBundle({name: arrays[name] for name in params.names()})
    if not bundle.is_finite():
        raise DivergenceError(0, "gradiente não finito")
    return bundle


def loss_and_gradients(cfg: ModelConfig, params: ModelParams, data, seed: int, mask_name: str = "train"):
    """Um passo completo: forward em modo treino, perda, backward"""
    logits, cache = forward(cfg, params, data, Mode.train(seed), trace=True)
    loss, dlogits = cross_entropy(logits, data.labels, data.mask(mask_name))
    return loss, backward(cfg, params, cache, dlogits)


def gradient_check(cfg: ModelConfig, params: ModelParams, data, seed: int = 0, step: float = 1e-5,
                   names: Optional[list] = None) -> Dict[str, float]:
    """Erro relativo máximo entre gradiente analítico e diferenças centrais, por parâmetro

    erro = max|analítico - numérico| / max(max|numérico|, 1e-6). As máscaras de dropout são
    as mesmas nos dois lados (mesma semente).
    """
    _, analytic = loss_and_gradients(cfg, params, data, seed)
    mask = data.mask("train")

    def loss_at(p):
        logits, _ = forward(cfg, p, data, Mode.train(seed), trace=False)
        return cross_entropy(logits, data.labels, mask)[0]

    errors = {}
    for name in names or params.names():
        base = params.arrays()[name]
        numeric = np.zeros_like(base)
        for index in np.ndindex(base.shape):
            plus = base.copy()
            plus[index] += step
            minus = base.copy()
            minus[index] -= step
            numeric[index] = (loss_at(params.replace({name: plus})) - loss_at(params.replace({name: minus}))) \
                / (2.0 * step)
        scale = max(float(np.max(np.abs(numeric))) if numeric.size else 0.0, 1e-6)
        diff = float(np.max(np.abs(analytic[name] - numeric))) if numeric.size else 0.0
        errors[name] = diff / scale
    return errors
