"""
Adam com momentos corrigidos e weight decay desacoplado
"""
from dataclasses import dataclass
from typing import Dict

import numpy as np

from gread.errors import ConfigError

BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8


@dataclass(eq=False)
class AdamState:
    m: Dict[str, np.ndarray]
    v: Dict[str, np.ndarray]
    t: int = 0

    @classmethod
    def zeros(cls, params) -> "AdamState":
        arrays = params.arrays()
        return cls({k: np.zeros_like(a) for k, a in arrays.items()},
                   {k: np.zeros_like(a) for k, a in arrays.items()}, 0)


def adam_step(state: AdamState, params, grads, tcfg, frozen=()):
    """Retorna (params, state) novos; entradas existentes não são alteradas

    θ ← θ - lr·m̂/(√v̂ + ε) - lr·wd·θ para todo parâmetro não congelado.
    """
    if tcfg.lr <= 0:
        raise ConfigError(f"lr deve ser positivo, recebido {tcfg.lr}")
    t = state.t + 1
    m, v, updated = {}, {}, {}
    for name, theta in params.arrays().items():
        g = grads[name]
        m[name] = BETA1 * state.m[name] + (1.0 - BETA1) * g
        v[name] = BETA2 * state.v[name] + (1.0 - BETA2) * g * g
        if name in frozen:
            continue
        m_hat = m[name] / (1.0 - BETA1 ** t)
        v_hat = v[name] / (1.0 - BETA2 ** t)
        updated[name] = theta - tcfg.lr * m_hat / (np.sqrt(v_hat) + EPSILON) - tcfg.lr * tcfg.weight_decay * theta
    return params.replace(updated), AdamState(m, v, t)
