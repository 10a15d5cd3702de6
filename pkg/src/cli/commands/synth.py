from argparse import Namespace

from dishka import Container

from src.core.constants import MIN_IMAGE_SIDE
from src.core.exceptions import InvalidConfigError
from src.services.phantom import PhantomService


def cmd_synth(args: Namespace, container: Container) -> int:
    if args.count < 1:
        raise InvalidConfigError("--count must be at least 1")
    if args.size < MIN_IMAGE_SIDE:
        raise InvalidConfigError(f"--size must be at least {MIN_IMAGE_SIDE}")

    phantom_service = container.get(PhantomService)
    phantom_service.write_pairs(
        args.out_dir,
        count=args.count,
        size=args.size,
        rgb=args.rgb,
        seed=args.seed,
    )
    return 0
