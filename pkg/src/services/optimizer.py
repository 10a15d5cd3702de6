import math
from typing import Final, Optional

import numpy as np
from loguru import logger

from src.core.config import AppConfig, GaConfig
from src.core.enums import TerminationReason
from src.core.exceptions import InvalidConfigError, LengthMismatchError
from src.core.utils.types import FeatureLike, FloatArray, SupportsArray
from src.models.dto import GaTrace, GenerationRecord, WeightPair

from .base import BaseService

# sample offset inside a segment's ends, where its selection mask still holds
SEGMENT_EDGE_OFFSET: Final[float] = 1e-12


class OptimizerService(BaseService):
    """Coarse-to-fine scan of wv (wt = 1 - wv) minimizing the feature-space MSE."""

    ga_defaults: GaConfig

    def __init__(self, config: AppConfig, ga_defaults: GaConfig) -> None:
        super().__init__(config)
        self.ga_defaults = ga_defaults

    def fitness_mse(self, f1: FeatureLike, f2: FeatureLike, weights: WeightPair) -> float:
        a1, a2 = self._vectors(f1, f2)
        return self._mse(a1, a2, weights)

    def optimize_weights(
        self,
        f1: FeatureLike,
        f2: FeatureLike,
        ga: Optional[GaConfig] = None,
    ) -> tuple[WeightPair, GaTrace]:
        ga = self._validated(ga)
        a1, a2 = self._vectors(f1, f2)

        base_wv = 0.0
        best_wv, best_mse = 0.0, math.inf
        records: list[GenerationRecord] = []
        reason = TerminationReason.MAX_GENERATIONS

        for generation in range(1, ga.max_generations + 1):
            diff = ga.initial_diff / 10 ** (generation - 1)
            trials = [WeightPair.from_wv(base_wv + k * diff) for k in range(ga.trials)]
            scores = [self._mse(a1, a2, pair) for pair in trials]

            ranking = sorted(range(len(scores)), key=lambda k: (scores[k], k))
            winner = ranking[0]
            gap = scores[ranking[1]] - scores[winner]

            if scores[winner] < best_mse:
                best_wv, best_mse = trials[winner].wv, scores[winner]

            records.append(
                GenerationRecord(
                    generation=generation,
                    base_wv=base_wv,
                    diff=diff,
                    trial_wv=tuple(pair.wv for pair in trials),
                    trial_mse=tuple(scores),
                    best_wv=trials[winner].wv,
                    best_mse=scores[winner],
                    gap=gap,
                )
            )
            logger.debug(
                f"Generation {generation}: diff={diff:.3g}, "
                f"best wv={trials[winner].wv:.6f}, mse={scores[winner]:.6g}, gap={gap:.3g}"
            )

            if gap < ga.termination_epsilon:
                reason = TerminationReason.EPSILON
                break

            base_wv = trials[winner].wv - diff / 2

        trace = GaTrace(
            generations=tuple(records),
            termination_reason=reason,
            best_wv=best_wv,
            best_mse=best_mse,
        )

        if ga.refine_segments:
            trace = self._refine(a1, a2, trace)

        weights = trace.weights
        logger.info(
            f"Optimal weights wv={weights.wv:.4f}, wt={weights.wt:.4f} "
            f"after {trace.generations_run} generations ({trace.termination_reason})"
        )
        return weights, trace

    def _refine(self, a1: FloatArray, a2: FloatArray, trace: GaTrace) -> GaTrace:
        refined_wv, refined_mse = self._segment_minimum(a1, a2)

        if refined_mse < trace.best_mse:
            logger.debug(
                f"Segment refinement improved mse {trace.best_mse:.6g} -> {refined_mse:.6g}"
            )
            return trace.model_copy(
                update={
                    "best_wv": refined_wv,
                    "best_mse": refined_mse,
                    "refined": True,
                    "refined_wv": refined_wv,
                    "refined_mse": refined_mse,
                }
            )

        return trace.model_copy(update={"refined_wv": refined_wv, "refined_mse": refined_mse})

    def _segment_minimum(self, a1: FloatArray, a2: FloatArray) -> tuple[float, float]:
        # the selection mask flips where wv|f1| = (1 - wv)|f2|; between flips the fitness
        # is a quadratic in wv with a closed-form minimum
        magnitude1, magnitude2 = np.abs(a1), np.abs(a2)
        total = magnitude1 + magnitude2
        flips = magnitude2[total > 0] / total[total > 0]
        edges = np.unique(np.concatenate(([0.0, 1.0], flips[(flips > 0.0) & (flips < 1.0)])))

        candidates: list[float] = [1.0]
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (lo + hi)
            mask = mid * magnitude1 >= (1.0 - mid) * magnitude2
            alpha = np.where(mask, 0.0, a2)
            beta = np.where(mask, a1, -a2)

            candidates.append(float(lo))
            curvature = float(np.sum(beta * beta))
            if curvature > 0.0:
                vertex = -float(np.sum(beta * (2.0 * alpha - a1 - a2))) / (2.0 * curvature)
                candidates.append(min(max(vertex, float(lo)), float(hi)))
            if hi - lo > 2 * SEGMENT_EDGE_OFFSET:
                candidates.append(float(lo) + SEGMENT_EDGE_OFFSET)
                candidates.append(float(hi) - SEGMENT_EDGE_OFFSET)

        best_wv, best_mse = 0.0, math.inf
        for wv in sorted(candidates):
            score = self._mse(a1, a2, WeightPair.from_wv(wv))
            if score < best_mse:
                best_wv, best_mse = wv, score

        return best_wv, best_mse

    @staticmethod
    def _mse(a1: FloatArray, a2: FloatArray, weights: WeightPair) -> float:
        m1 = weights.wv * a1
        m2 = weights.wt * a2
        fused = np.where(np.abs(m1) >= np.abs(m2), m1, m2)
        return 0.5 * (float(np.mean((fused - a1) ** 2)) + float(np.mean((fused - a2) ** 2)))

    @staticmethod
    def _vectors(f1: FeatureLike, f2: FeatureLike) -> tuple[FloatArray, FloatArray]:
        a1 = f1.as_array() if isinstance(f1, SupportsArray) else np.asarray(f1, dtype=np.float64)
        a2 = f2.as_array() if isinstance(f2, SupportsArray) else np.asarray(f2, dtype=np.float64)

        if a1.ndim != 1 or a2.ndim != 1 or a1.size == 0 or a1.shape != a2.shape:
            raise LengthMismatchError(
                f"Feature vectors must be non-empty and equally long, got {a1.shape} and {a2.shape}"
            )

        return a1, a2

    def _validated(self, ga: Optional[GaConfig]) -> GaConfig:
        if ga is None:
            return self.ga_defaults
        if not isinstance(ga, GaConfig):
            raise InvalidConfigError(f"Expected GaConfig, got {type(ga).__name__}")
        return ga.build(**ga.model_dump())
