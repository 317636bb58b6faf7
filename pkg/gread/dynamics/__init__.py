# Dynamics module init
from gread.dynamics.reaction import (
    ReactionKind, ReactionSpec, CoefMode, GREAD_REACTIONS, OperatorBundle, Coefficients,
    RhsGradient, parse_mode, build_operators, reaction, rhs, rhs_vjp,
    blur_then_sharpen, gcn_step_baseline, identity_adjacency,
)
from gread.dynamics.solvers import (
    SolverMethod, SolverConfig, IntegrationGradient, integrate, integrate_vjp, round_half_up,
)

__all__ = [
    'ReactionKind',
    'ReactionSpec',
    'CoefMode',
    'GREAD_REACTIONS',
    'OperatorBundle',
    'Coefficients',
    'RhsGradient',
    'parse_mode',
    'build_operators',
    'reaction',
    'rhs',
    'rhs_vjp',
    'blur_then_sharpen',
    'gcn_step_baseline',
    'identity_adjacency',
    'SolverMethod',
    'SolverConfig',
    'IntegrationGradient',
    'integrate',
    'integrate_vjp',
    'round_half_up',
]
