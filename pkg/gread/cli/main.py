"""
Ponto de entrada da CLI - subcomandos, flags globais e mapeamento de erros para códigos de saída
"""
import argparse
import sys
from dataclasses import replace
from pathlib import Path

from gread.cli.commands import COMMANDS, cmd_generate
from gread.cli.config import apply_overrides, check_seed, default_out_dir, load_config
from gread.errors import ConfigError, DataError, DivergenceError, GreadError, ShapeError
from gread.utils.logs import log_message
from gread.version import __version__

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_DIVERGENCE = 3


class _Parser(argparse.ArgumentParser):
    """argparse que sai com código 1 (erro de configuração) em vez de 2"""
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: erro: {message}\n")
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gread", description="Redes neurais de reação-difusão em grafos")
    parser.add_argument("--version", action="version", version=f"gread {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="arquivo JSON ou nome de preset em config/presets")
    common.add_argument("--out", help="diretório de saída (padrão: $GREAD_OUT ou ./gread-out)")
    common.add_argument("--seed", type=int, help="semente única de toda a aleatoriedade")
    common.add_argument("--jobs", type=int, help="threads do pool de células (sweep/ablation)")
    common.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="sobrescreve uma chave da configuração (repetível)")

    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    for name in COMMANDS:
        command = sub.add_parser(name, parents=[common])
        if name == "generate":
            command.add_argument("kind", nargs="?", choices=("csbm", "homophily", "grid"),
                                 help="gerador (padrão: chave 'dataset')")
    return parser


def exit_code_for(error: Exception) -> int:
    if isinstance(error, DivergenceError):
        return EXIT_DIVERGENCE
    if isinstance(error, (DataError, ShapeError)):
        return EXIT_DATA
    return EXIT_CONFIG


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.seed is not None:
            config = replace(config, seed=check_seed(args.seed))
        if args.jobs is not None:
            if args.jobs < 1:
                raise ConfigError(f"--jobs deve ser >= 1, recebido {args.jobs}")
            config = replace(config, jobs=args.jobs)
        config = apply_overrides(config, args.overrides)
        out_dir = Path(args.out) if args.out else default_out_dir()
        log_message(f"[CLI] {args.command} -> {out_dir}")
        if args.command == "generate":
            return cmd_generate(config, out_dir, args.kind)
        return COMMANDS[args.command](config, out_dir)
    except GreadError as e:
        code = exit_code_for(e)
        log_message(f"[CLI] {args.command} falhou (código {code}): {e}", include_traceback=True, is_error=True)
        sys.stderr.write(f"erro: {e}\n")
        return code
    except OSError as e:
        log_message(f"[CLI] Erro de E/S: {e}", include_traceback=True, is_error=True)
        sys.stderr.write(f"erro: {e}\n")
        return EXIT_DATA


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
