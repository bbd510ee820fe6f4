"""Command-line entry point."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from kacbaker import __version__
from kacbaker.config import config
from kacbaker.errors import ConfigError, DomainError, KacBakerError
from kacbaker.cli.commands import COMMANDS, FORMATS, RunConfig
from kacbaker.cli.output import emit

logger = logging.getLogger("kacbaker")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kacbaker",
        description="Transfer operators, Fredholm determinants and zeta zeros of the Kac-Baker spin chain",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=sorted(COMMANDS), help="what to compute")
    parser.add_argument("--config", type=Path, help="JSON file with run parameters (flags override it)")
    parser.add_argument("--lambda", dest="lam", type=float, help="coupling ratio in (0, 1)")
    parser.add_argument("--beta", help="inverse temperature, complex allowed (e.g. 0.69+6.28j)")
    parser.add_argument("--beta-min", type=float)
    parser.add_argument("--beta-max", type=float)
    parser.add_argument("--beta-step", type=float)
    parser.add_argument("--N", dest="N", type=int, help="truncation dimension")
    parser.add_argument("--tol", type=float, help="override every verification tolerance")
    parser.add_argument("--z", help="zeta argument (default 1)")
    parser.add_argument("--period", type=int, help="largest lattice period for partition/traces")
    parser.add_argument("--mode", choices=("real", "line"), help="zero search on the real axis or Re beta = ln 2")
    parser.add_argument("--n-min", type=int)
    parser.add_argument("--n-max", type=int)
    parser.add_argument("--printed", action="store_true", default=None,
                        help="bmatrix without the beta^mu factor")
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--out", type=Path, help="output file (default stdout)")
    parser.add_argument("--zeros-out", type=Path, help="scan: also write located zeros here")
    parser.add_argument("--jobs", type=int, help="worker threads for grid evaluation")
    parser.add_argument("--log-level", type=str.upper, choices=("DEBUG", "INFO", "WARNING", "ERROR"),
                        help="override KACBAKER_LOG_LEVEL")
    return parser


def setup_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(
        level=(level or config.log_level()).upper(),
        format="[%(asctime)s] %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def resolve(args: argparse.Namespace) -> RunConfig:
    file_values = {}
    if args.config is not None:
        try:
            file_values = RunConfig.load_file(args.config)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config", "log_level")}
    return RunConfig.from_sources(file_values, **flags)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    try:
        config.validate()
        cfg = resolve(args)
        result = COMMANDS[args.command](cfg)
        emit(result.render(cfg.format), cfg.out)
    except (ConfigError, DomainError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("output failed: %s", exc)
        return EXIT_IO
    except KacBakerError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAILED

    if result.exit_code != EXIT_OK:
        logger.warning("%s finished with failures", args.command)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
