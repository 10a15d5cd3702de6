import csv
import io
import sys
from argparse import Namespace

from dishka import Container
from loguru import logger

from src.core.enums import MetricName, ReportFormat
from src.core.exceptions import ShapeMismatchError
from src.core.utils.json_utils import pretty_encode
from src.models.dto import MetricReport
from src.services.image import ImageService
from src.services.metrics import MetricsService


def cmd_metrics(args: Namespace, container: Container) -> int:
    image_service = container.get(ImageService)
    metrics_service = container.get(MetricsService)

    source1 = image_service.load_image(args.src1)
    source2 = image_service.load_image(args.src2)
    fused = image_service.load_image(args.fused)
    a, b = image_service.register_pair(source1, source2)

    if fused.shape != a.shape:
        raise ShapeMismatchError(
            f"Fused image {fused.shape} does not match registered sources {a.shape} "
            "(channels, h, w)"
        )

    text = render_report(metrics_service.full_report(a, b, fused), args.format)

    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
        logger.info(f"Metrics written to '{args.out}'")

    return 0


def render_report(report: MetricReport, report_format: ReportFormat) -> str:
    match report_format:
        case ReportFormat.JSON:
            return pretty_encode(report.to_dict())
        case ReportFormat.CSV:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow([name.value for name in MetricName])
            writer.writerow(report.to_row())
            return buffer.getvalue()
