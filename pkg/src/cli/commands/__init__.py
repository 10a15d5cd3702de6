from .benchmark import cmd_benchmark
from .fuse import cmd_fuse
from .metrics import cmd_metrics
from .synth import cmd_synth

__all__ = [
    "cmd_benchmark",
    "cmd_fuse",
    "cmd_metrics",
    "cmd_synth",
]
