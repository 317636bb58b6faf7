# CLI module init
from gread.cli.config import RunConfig, load_config, apply_overrides, write_config, build_dataset
from gread.cli.commands import (
    COMMANDS, cmd_train, cmd_generate, cmd_energy, cmd_sweep, cmd_export, cmd_bench, cmd_ablation,
)
from gread.cli.main import run, main

__all__ = [
    'RunConfig',
    'load_config',
    'apply_overrides',
    'write_config',
    'build_dataset',
    'COMMANDS',
    'cmd_train',
    'cmd_generate',
    'cmd_energy',
    'cmd_sweep',
    'cmd_export',
    'cmd_bench',
    'cmd_ablation',
    'run',
    'main',
]
