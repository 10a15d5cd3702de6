from argparse import Namespace
from pathlib import Path
from typing import Any

from dishka import Container
from loguru import logger

from src.core.config import GaConfig
from src.core.exceptions import InvalidConfigError
from src.core.utils.json_utils import pretty_encode
from src.models.dto import FusionResult
from src.services.fusion import FusionService
from src.services.image import ImageService


def cmd_fuse(args: Namespace, container: Container) -> int:
    if args.workers < 1:
        raise InvalidConfigError("--workers must be at least 1")

    ga = container.get(GaConfig).with_overrides(
        initial_diff=args.ga_diff,
        trials=args.ga_trials,
        max_generations=args.ga_max_gen,
        termination_epsilon=args.ga_eps,
        refine_segments=False if args.no_ga_refine else None,
    )

    image_service = container.get(ImageService)
    fusion_service = container.get(FusionService)

    source1 = image_service.load_image(args.in1)
    source2 = image_service.load_image(args.in2)
    a, b = image_service.register_pair(source1, source2)

    result = fusion_service.fuse(a, b, args.method, ga, workers=args.workers)
    image_service.save_image(result.fused, args.out)
    logger.info(f"Fused image written to '{args.out}'")

    if result.weights is not None:
        target = args.weights_out or _default_weights_path(args.out)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(pretty_encode(weights_payload(result, args.trace)), encoding="utf-8")
        logger.info(f"Weights written to '{target}'")

    return 0


def weights_payload(result: FusionResult, with_trace: bool = False) -> dict[str, Any]:
    mean = result.mean_weights
    if mean is None or result.weights is None:
        return {"method": result.method.value}

    payload: dict[str, Any] = {
        "method": result.method.value,
        "wv": mean.wv,
        "wt": mean.wt,
        "dominant": mean.dominant.value,
        "per_channel": [pair.model_dump() for pair in result.weights],
    }
    if with_trace and result.traces is not None:
        payload["trace"] = [trace.model_dump(mode="json") for trace in result.traces]

    return payload


def _default_weights_path(out: Path) -> Path:
    return out.with_name(f"{out.stem}.weights.json")
