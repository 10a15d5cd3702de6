from pathlib import Path
from typing import Any, Callable, Final

import numpy as np
from msgspec.json import Decoder, Encoder, format


def _enc_hook(obj: Any) -> Any:
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, Path):
        return obj.as_posix()
    raise NotImplementedError(f"Objects of type '{type(obj).__name__}' are not supported")


decode: Final[Callable[..., Any]] = Decoder[dict[str, Any]]().decode
_encoder: Final[Encoder] = Encoder(enc_hook=_enc_hook)


def pretty_encode(obj: Any, indent: int = 2) -> str:
    # insertion order of dict keys is kept, reports rely on it
    data: bytes = format(_encoder.encode(obj), indent=indent)
    return data.decode() + "\n"
