"""
Integradores de passo fixo - Euler e RK4 clássico, com trilha de estados e retropropagação
pelos passos desenrolados (discretizar e depois otimizar)
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from gread.errors import ConfigError, DivergenceError
from gread.dynamics.reaction import rhs, rhs_vjp
from gread.utils.logs import log_message


class SolverMethod(Enum):
    EULER = "Euler"
    RK4 = "RK4"

    @classmethod
    def parse(cls, value) -> "SolverMethod":
        if isinstance(value, SolverMethod):
            return value
        for method in cls:
            if method.value.lower() == str(value).strip().lower():
                return method
        raise ConfigError(f"Método de integração desconhecido: {value}")


def round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


@dataclass(frozen=True)
class SolverConfig:
    method: SolverMethod = SolverMethod.EULER
    tau: float = 1.0
    T: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'method', SolverMethod.parse(self.method))
        if not np.isfinite(self.tau) or self.tau <= 0:
            raise ConfigError(f"tau deve ser positivo, recebido {self.tau}")
        if not np.isfinite(self.T) or self.T <= 0:
            raise ConfigError(f"T deve ser positivo, recebido {self.T}")

    @property
    def n_steps(self) -> int:
        return max(1, round_half_up(self.T / self.tau))

    def step_index(self, t: float) -> int:
        """Índice do estado da trilha mais próximo do instante t em [0, T]"""
        if t < 0 or t > self.T:
            raise ConfigError(f"Instante {t} fora de [0, {self.T}]")
        return min(self.n_steps, round_half_up(t * self.n_steps / self.T))


def _advance(f, h, tau, method):
    if method is SolverMethod.EULER:
        return h + tau * f(h)
    k1 = f(h)
    k2 = f(h + 0.5 * tau * k1)
    k3 = f(h + 0.5 * tau * k2)
    k4 = f(h + tau * k3)
    return h + tau * (k1 / 6.0 + k2 / 3.0 + k3 / 3.0 + k4 / 6.0)


def integrate(spec, ops, coeffs, cfg: SolverConfig, h0, trace: bool = False):
    """H(T) por n_steps passos; com trace, também a lista H(0..n_steps)"""
    h = np.array(h0, dtype=np.float64, copy=True)
    states = [h] if trace else None

    def f(state):
        return rhs(spec, ops, coeffs, state)

    with np.errstate(over='ignore', invalid='ignore'):
        for step in range(cfg.n_steps):
            h = _advance(f, h, cfg.tau, cfg.method)
            if not np.all(np.isfinite(h)):
                context = f"{spec.kind.value}/{cfg.method.value}, tau={cfg.tau}"
                log_message(f"[INTEGRATE] Estado não finito no passo {step + 1} ({context})", is_error=True)
                raise DivergenceError(step + 1, context)
            if trace:
                states.append(h)
    return h, states


@dataclass
class IntegrationGradient:
    h0: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    adjacency: np.ndarray = None
    source: np.ndarray = None


class _Accumulator:
    def __init__(self, coeffs, adjacency_grad, shape):
        self.alpha = np.zeros_like(coeffs.alpha)
        self.beta = np.zeros_like(coeffs.beta)
        self.adjacency = None
        self.adjacency_grad = adjacency_grad
        self.source = np.zeros(shape)

    def add(self, grad, scale=1.0):
        self.alpha += scale * grad.alpha
        self.beta += scale * grad.beta
        if grad.adjacency is not None:
            if self.adjacency is None:
                self.adjacency = np.zeros_like(grad.adjacency)
            self.adjacency += scale * grad.adjacency
        if grad.source is not None:
            self.source += scale * grad.source


def integrate_vjp(spec, ops, coeffs, cfg: SolverConfig, states, g_final, adjacency_grad=False):
    """Retropropaga g = dL/dH(T) pelos passos em ordem reversa

    `states` é a trilha H(0..n_steps) devolvida por integrate(trace=True); os estágios do
    RK4 são recalculados a partir de H(k).
    """
    if states is None or len(states) != cfg.n_steps + 1:
        raise ConfigError("Retropropagação exige a trilha completa de estados")
    tau = cfg.tau
    acc = _Accumulator(coeffs, adjacency_grad, states[0].shape)
    g = np.array(g_final, dtype=np.float64, copy=True)

    def vjp(state, cot):
        return rhs_vjp(spec, ops, coeffs, state, cot, adjacency_grad)

    def f(state):
        return rhs(spec, ops, coeffs, state)

    for step in range(cfg.n_steps - 1, -1, -1):
        h = states[step]
        if cfg.method is SolverMethod.EULER:
            grad = vjp(h, tau * g)
            acc.add(grad)
            g = g + grad.h
            continue

        k1 = f(h)
        s2 = h + 0.5 * tau * k1
        k2 = f(s2)
        s3 = h + 0.5 * tau * k2
        k3 = f(s3)
        s4 = h + tau * k3

        g_k1 = (tau / 6.0) * g
        g_k2 = (tau / 3.0) * g
        g_k3 = (tau / 3.0) * g
        g_k4 = (tau / 6.0) * g
        g_h = g.copy()

        grad4 = vjp(s4, g_k4)
        acc.add(grad4)
        g_h += grad4.h
        g_k3 = g_k3 + tau * grad4.h

        grad3 = vjp(s3, g_k3)
        acc.add(grad3)
        g_h += grad3.h
        g_k2 = g_k2 + 0.5 * tau * grad3.h

        grad2 = vjp(s2, g_k2)
        acc.add(grad2)
        g_h += grad2.h
        g_k1 = g_k1 + 0.5 * tau * grad2.h

        grad1 = vjp(h, g_k1)
        acc.add(grad1)
        g_h += grad1.h
        g = g_h

    if not np.all(np.isfinite(g)):
        raise DivergenceError(0, "adjunto não finito na retropropagação")
    return IntegrationGradient(g, acc.alpha, acc.beta, acc.adjacency, acc.source)
