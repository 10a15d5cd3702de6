import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from dishka import Container
from loguru import logger
from pydantic import ValidationError

from src.__version__ import __version__
from src.core.config import AppConfig
from src.core.enums import FusionMethod, ReportFormat
from src.core.exceptions import ConfigFileError, InvalidConfigError, WavefuseError
from src.core.logger import setup_logger
from src.infrastructure.di import create_container

from .commands import cmd_benchmark, cmd_fuse, cmd_metrics, cmd_synth

EXIT_OK = 0
EXIT_PROCESSING = 1
EXIT_USAGE = 2


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavefuse",
        description="Wavelet-domain fusion of registered multimodal images.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log warnings only")
    parser.add_argument("--log-file", type=Path, help="also log to a rotating file")

    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    fuse = commands.add_parser("fuse", help="fuse two source images")
    fuse.add_argument("--method", type=FusionMethod, choices=list(FusionMethod), required=True)
    fuse.add_argument("--in1", type=Path, required=True, help="first source image")
    fuse.add_argument("--in2", type=Path, required=True, help="second source image")
    fuse.add_argument("--out", type=Path, required=True, help="fused image (.png/.pgm/.ppm)")
    fuse.add_argument("--weights-out", type=Path, help="weights JSON for GA methods")
    fuse.add_argument("--trace", action="store_true", help="include optimizer traces")
    fuse.add_argument("--ga-diff", type=float, help="initial weight step")
    fuse.add_argument("--ga-trials", type=int, help="trial weights per generation")
    fuse.add_argument("--ga-max-gen", type=int, help="generation limit")
    fuse.add_argument("--ga-eps", type=float, help="termination threshold")
    fuse.add_argument("--no-ga-refine", action="store_true", help="skip segment refinement")
    fuse.add_argument("--workers", type=int, default=1, help="threads for colour channels")
    fuse.set_defaults(handler=cmd_fuse)

    metrics = commands.add_parser("metrics", help="score a fused image against its sources")
    metrics.add_argument("--src1", type=Path, required=True)
    metrics.add_argument("--src2", type=Path, required=True)
    metrics.add_argument("--fused", type=Path, required=True)
    metrics.add_argument(
        "--format", type=ReportFormat, choices=list(ReportFormat), default=ReportFormat.JSON
    )
    metrics.add_argument("--out", type=Path, help="report file (stdout when omitted)")
    metrics.set_defaults(handler=cmd_metrics)

    benchmark = commands.add_parser("benchmark", help="run every method on every dataset")
    benchmark.add_argument("--config", type=Path, required=True, help="benchmark TOML file")
    benchmark.add_argument(
        "--format", type=ReportFormat, choices=list(ReportFormat), default=ReportFormat.JSON
    )
    benchmark.add_argument("--out", type=Path, help="report file (report dir by default)")
    benchmark.add_argument("--workers", type=int, default=1, help="datasets in parallel")
    benchmark.add_argument("--save-images", action="store_true", help="keep fused images")
    benchmark.add_argument("--timestamp", action="store_true", help="stamp the report header")
    benchmark.set_defaults(handler=cmd_benchmark)

    synth = commands.add_parser("synth", help="write synthetic source pairs and a config")
    synth.add_argument("--out-dir", type=Path, required=True)
    synth.add_argument("--count", type=int, default=4)
    synth.add_argument("--size", type=int, default=256)
    synth.add_argument("--rgb", action="store_true", help="colour second source")
    synth.add_argument("--seed", type=int, default=0)
    synth.set_defaults(handler=cmd_synth)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exception:
        return exception.code if isinstance(exception.code, int) else EXIT_USAGE

    level = "DEBUG" if args.verbose else "WARNING" if args.quiet else "INFO"
    setup_logger(level=level, log_file=args.log_file)

    try:
        config = AppConfig.get()
    except ValidationError as exception:
        return _fail(f"invalid environment: {exception}", EXIT_USAGE)

    container: Container = create_container(config)
    try:
        code: int = args.handler(args, container)
        return code
    except (InvalidConfigError, ConfigFileError) as exception:
        return _fail(str(exception), EXIT_USAGE)
    except (WavefuseError, OSError) as exception:
        logger.debug(f"{type(exception).__name__} in '{args.command}'")
        return _fail(str(exception), EXIT_PROCESSING)
    finally:
        container.close()


def _fail(message: str, code: int) -> int:
    sys.stderr.write(f"error: {message}\n")
    return code
