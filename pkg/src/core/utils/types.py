from pathlib import Path
from typing import Protocol, Sequence, TypeAlias, Union, runtime_checkable

import numpy as np
import numpy.typing as npt

FloatArray: TypeAlias = npt.NDArray[np.float64]

AnyPath: TypeAlias = Union[str, Path]


@runtime_checkable
class SupportsArray(Protocol):
    def as_array(self) -> FloatArray: ...


FeatureLike: TypeAlias = Union[SupportsArray, Sequence[float], FloatArray]
