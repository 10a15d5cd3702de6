from argparse import Namespace

from dishka import Container
from loguru import logger

from src.core.config import AppConfig
from src.core.exceptions import InvalidConfigError
from src.core.utils.time import timestamp_now
from src.services.benchmark import BenchmarkService


def cmd_benchmark(args: Namespace, container: Container) -> int:
    if args.workers < 1:
        raise InvalidConfigError("--workers must be at least 1")

    config = container.get(AppConfig)
    benchmark_service = container.get(BenchmarkService)

    bench = benchmark_service.load_config(args.config)
    outcomes = benchmark_service.run(bench, workers=args.workers, save_images=args.save_images)

    timestamp = timestamp_now() if args.timestamp else None
    report = benchmark_service.build_report(outcomes, bench.methods, timestamp=timestamp)

    target = args.out or config.report_dir / f"benchmark.{args.format.value}"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(benchmark_service.render(report, args.format), encoding="utf-8")

    failed = [o.name for o in outcomes if o.failed]
    logger.info(f"Report written to '{target}' ({len(outcomes) - len(failed)} ok)")

    if failed:
        logger.error(f"Failed datasets: {', '.join(failed)}")
        return 1

    return 0
