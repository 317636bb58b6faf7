"""
Termos de reação e lado direito da equação de reação-difusão
f(H) = -α∘(LH) + β∘r(H), com as sete reações e as dinâmicas de referência
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from gread.errors import ConfigError, ShapeError
from gread.graph.sparse import (
    GraphKind, NORMALIZED_KINDS, SparseGraph, identity, laplacian, spmm, sparse_square,
)


class ReactionKind(Enum):
    F = "F"
    AC = "AC"
    Z = "Z"
    BS = "BS"
    ST = "ST"
    FB = "FB"
    FBSTAR = "FBstar"
    DIFFUSION_ONLY = "DiffusionOnly"
    GCN_STEP = "GcnStep"


GREAD_REACTIONS = (
    ReactionKind.F, ReactionKind.AC, ReactionKind.Z, ReactionKind.BS,
    ReactionKind.ST, ReactionKind.FB, ReactionKind.FBSTAR,
)

_ALIASES = {
    "fb*": ReactionKind.FBSTAR,
    "fbstar": ReactionKind.FBSTAR,
    "diffusion": ReactionKind.DIFFUSION_ONLY,
    "diffusiononly": ReactionKind.DIFFUSION_ONLY,
    "grand": ReactionKind.DIFFUSION_ONLY,
    "gcn": ReactionKind.GCN_STEP,
    "gcnstep": ReactionKind.GCN_STEP,
}


class CoefMode(Enum):
    SC = "SC"
    VC = "VC"


@dataclass(frozen=True)
class ReactionSpec:
    kind: ReactionKind

    @property
    def needs_square(self) -> bool:
        return self.kind is ReactionKind.BS

    @property
    def is_continuous(self) -> bool:
        return self.kind is not ReactionKind.GCN_STEP

    @classmethod
    def parse(cls, name) -> "ReactionSpec":
        if isinstance(name, ReactionSpec):
            return name
        if isinstance(name, ReactionKind):
            return cls(name)
        text = str(name).strip()
        for kind in ReactionKind:
            if kind.value.lower() == text.lower():
                return cls(kind)
        if text.lower() in _ALIASES:
            return cls(_ALIASES[text.lower()])
        raise ConfigError(f"Reação desconhecida: {name}")


def parse_mode(value) -> CoefMode:
    if isinstance(value, CoefMode):
        return value
    try:
        return CoefMode(str(value).upper())
    except ValueError:
        raise ConfigError(f"Modo de coeficiente desconhecido: {value}") from None


@dataclass(frozen=True, eq=False)
class OperatorBundle:
    """Operadores fixos durante uma integração: A (ou Ã), L, A² opcional e H(0) opcional"""
    adjacency: SparseGraph
    laplacian: SparseGraph
    adjacency_squared: Optional[SparseGraph] = None
    h0: Optional[np.ndarray] = None

    def __post_init__(self):
        n = self.adjacency.n_nodes
        if self.adjacency.kind not in NORMALIZED_KINDS:
            raise ConfigError(f"Adjacência do bundle deve ser normalizada, recebido {self.adjacency.kind.value}")
        if self.laplacian.n_nodes != n:
            raise ShapeError("Laplaciano e adjacência com tamanhos diferentes")
        if self.adjacency_squared is not None and self.adjacency_squared.n_nodes != n:
            raise ShapeError("A² e adjacência com tamanhos diferentes")
        if self.h0 is not None and np.shape(self.h0)[0] != n:
            raise ShapeError("H(0) com número de linhas diferente do número de nós")

    @property
    def n_nodes(self) -> int:
        return self.adjacency.n_nodes


def build_operators(adjacency: SparseGraph, spec: ReactionSpec, h0=None) -> OperatorBundle:
    squared = sparse_square(adjacency) if spec.needs_square else None
    return OperatorBundle(adjacency, laplacian(adjacency), squared, h0)


@dataclass(frozen=True, eq=False)
class Coefficients:
    """α e β: escalar (SC, forma (1,)) ou vetor por nó (VC, forma (N,))"""
    alpha: np.ndarray
    beta: np.ndarray
    alpha_mode: CoefMode = CoefMode.SC
    beta_mode: CoefMode = CoefMode.SC

    def __post_init__(self):
        for name in ("alpha", "beta"):
            value = np.atleast_1d(np.asarray(getattr(self, name), dtype=np.float64))
            mode = getattr(self, f"{name}_mode")
            if mode is CoefMode.SC and value.shape != (1,):
                raise ShapeError(f"{name} SC deve ter forma (1,), recebido {value.shape}")
            object.__setattr__(self, name, value)

    @classmethod
    def create(cls, n_nodes, alpha_mode=CoefMode.SC, beta_mode=CoefMode.SC, alpha=1.0, beta=1.0):
        alpha_mode, beta_mode = parse_mode(alpha_mode), parse_mode(beta_mode)
        size_a = n_nodes if alpha_mode is CoefMode.VC else 1
        size_b = n_nodes if beta_mode is CoefMode.VC else 1
        return cls(np.full(size_a, float(alpha)), np.full(size_b, float(beta)), alpha_mode, beta_mode)

    def check(self, n_nodes: int) -> None:
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if getattr(self, f"{name}_mode") is CoefMode.VC and value.shape != (n_nodes,):
                raise ShapeError(f"{name} VC deve ter {n_nodes} entradas, recebido {value.shape}")


def _column(coef: np.ndarray) -> np.ndarray:
    return coef.reshape(-1, 1)


def _reduce(coef: np.ndarray, product: np.ndarray) -> np.ndarray:
    """Gradiente do coeficiente: soma total (SC) ou por linha (VC)"""
    if coef.shape[0] == 1:
        return np.array([product.sum()])
    return product.sum(axis=1)


def _transpose_spmm(m: SparseGraph, g: np.ndarray) -> np.ndarray:
    return np.asarray(m.matrix.T @ g)


def _edge_dot(pattern: SparseGraph, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Para cada entrada (i, j) do padrão: <u_i, v_j>"""
    return np.einsum('ij,ij->i', u[pattern.rows], v[pattern.cols])


def reaction(spec: ReactionSpec, ops: OperatorBundle, h: np.ndarray) -> np.ndarray:
    kind = spec.kind
    if kind is ReactionKind.F:
        return h * (1.0 - h)
    if kind is ReactionKind.AC:
        return h * (1.0 - h ** 2)
    if kind is ReactionKind.Z:
        return h * (h - h ** 2)
    if kind is ReactionKind.BS:
        if ops.adjacency_squared is None:
            raise ConfigError("Reação BS exige A² no bundle de operadores")
        return spmm(ops.adjacency, h) - spmm(ops.adjacency_squared, h)
    if kind is ReactionKind.ST:
        if ops.h0 is None:
            raise ConfigError("Reação ST exige H(0) no bundle de operadores")
        if np.shape(ops.h0) != h.shape:
            raise ShapeError(f"H(0) {np.shape(ops.h0)} incompatível com H {h.shape}")
        return np.array(ops.h0, dtype=np.float64, copy=True)
    if kind is ReactionKind.FB:
        return spmm(ops.laplacian, h)
    if kind is ReactionKind.FBSTAR:
        return spmm(ops.laplacian, h) + h
    if kind is ReactionKind.DIFFUSION_ONLY:
        return np.zeros_like(h)
    raise ConfigError(f"{kind.value} não é uma dinâmica contínua")


def rhs(spec: ReactionSpec, ops: OperatorBundle, coeffs: Coefficients, h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=np.float64)
    if h.ndim != 2 or h.shape[0] != ops.n_nodes:
        raise ShapeError(f"Estado {h.shape} incompatível com {ops.n_nodes} nós")
    coeffs.check(ops.n_nodes)
    diffusion = spmm(ops.laplacian, h)
    return -_column(coeffs.alpha) * diffusion + _column(coeffs.beta) * reaction(spec, ops, h)


@dataclass
class RhsGradient:
    """Gradientes de um VJP de f: estado, α, β, valores da adjacência (SA) e H(0) via ST"""
    h: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    adjacency: Optional[np.ndarray] = None
    source: Optional[np.ndarray] = None


def rhs_vjp(spec, ops, coeffs, h, g, adjacency_grad=False) -> RhsGradient:
    """Produto vetor-Jacobiano de f(H) para o cotangente g"""
    kind = spec.kind
    diffusion = spmm(ops.laplacian, h)
    r = reaction(spec, ops, h)
    alpha, beta = _column(coeffs.alpha), _column(coeffs.beta)

    d_alpha = -_reduce(coeffs.alpha, g * diffusion)
    d_beta = _reduce(coeffs.beta, g * r)
    ga = -alpha * g
    gb = beta * g

    dh = _transpose_spmm(ops.laplacian, ga)
    d_adj = -_edge_dot(ops.adjacency, ga, h) if adjacency_grad else None
    source = None

    if kind is ReactionKind.F:
        dh += gb * (1.0 - 2.0 * h)
    elif kind is ReactionKind.AC:
        dh += gb * (1.0 - 3.0 * h ** 2)
    elif kind is ReactionKind.Z:
        dh += gb * (2.0 * h - 3.0 * h ** 2)
    elif kind is ReactionKind.BS:
        # r = ÃH - Ã(ÃH)
        at_gb = _transpose_spmm(ops.adjacency, gb)
        d_blur = -at_gb
        dh += at_gb + _transpose_spmm(ops.adjacency, d_blur)
        if adjacency_grad:
            blur = spmm(ops.adjacency, h)
            d_adj += (_edge_dot(ops.adjacency, gb, h)
                      - _edge_dot(ops.adjacency, gb, blur)
                      + _edge_dot(ops.adjacency, d_blur, h))
    elif kind is ReactionKind.ST:
        source = gb
    elif kind in (ReactionKind.FB, ReactionKind.FBSTAR):
        dh += _transpose_spmm(ops.laplacian, gb)
        if kind is ReactionKind.FBSTAR:
            dh += gb
        if adjacency_grad:
            d_adj -= _edge_dot(ops.adjacency, gb, h)

    return RhsGradient(dh, d_alpha, d_beta, d_adj, source)


def blur_then_sharpen(ops: OperatorBundle, h: np.ndarray) -> np.ndarray:
    """B = ÃH seguido de B + L̃B"""
    blurred = spmm(ops.adjacency, h)
    return blurred + spmm(ops.laplacian, blurred)


def gcn_step_baseline(ops: OperatorBundle, h: np.ndarray, w: np.ndarray) -> np.ndarray:
    """σ((I - L)HW) com σ = ReLU"""
    h = np.asarray(h, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != h.shape[1]:
        raise ShapeError(f"Peso {w.shape} incompatível com estado {h.shape}")
    smoothed = h - spmm(ops.laplacian, h)
    return np.maximum(smoothed @ w, 0.0)


def identity_adjacency(n_nodes: int) -> SparseGraph:
    """Ã = I (cada nó atende só a si mesmo); L̃ = 0"""
    return identity(n_nodes, GraphKind.ROW_STOCHASTIC)
