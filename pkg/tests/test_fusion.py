import numpy as np
import pytest

from src.core.config import GaConfig
from src.core.enums import FusionMethod, TransformKind
from src.core.exceptions import ShapeMismatchError, TransformMismatchError
from src.models.dto import Decomposition, ImageBuffer, WeightPair
from src.services.fusion import FusionService
from src.services.phantom import PhantomService
from src.services.wavelet import WaveletService

from .conftest import constant_image


def _filled(wavelet_service: WaveletService, approximation: float, detail: float) -> Decomposition:
    base = wavelet_service.dwt_forward(constant_image(0.0, 8, 8))
    values = [approximation] + [detail] * (len(base.bands) - 1)
    return base.with_coeffs([np.full(band.shape, v) for band, v in zip(base.bands, values)])


def test_max_rule_examples(fusion_service: FusionService, wavelet_service: WaveletService) -> None:
    da = _filled(wavelet_service, 4.0, -5.0)
    db = _filled(wavelet_service, 2.0, 3.0)

    fused = fusion_service.fuse_bands_max(da, db)

    assert np.all(fused.approximation.coeffs == 3.0)
    assert all(np.all(band.coeffs == -5.0) for band in fused.details)


def test_max_rule_idempotent(
    fusion_service: FusionService, wavelet_service: WaveletService, textured: ImageBuffer
) -> None:
    d = wavelet_service.udwt_forward(textured)

    fused = fusion_service.fuse_bands_max(d, d)

    for a, b in zip(fused.bands, d.bands):
        np.testing.assert_array_equal(a.coeffs, b.coeffs)


def test_weighted_rule_examples(
    fusion_service: FusionService, wavelet_service: WaveletService
) -> None:
    da = _filled(wavelet_service, 10.0, 10.0)
    db = _filled(wavelet_service, 2.0, 2.0)

    first = fusion_service.fuse_bands_weighted(da, db, WeightPair(wv=1.0, wt=0.0))
    table = fusion_service.fuse_bands_weighted(da, db, WeightPair(wv=0.2965, wt=0.7035))
    equal = fusion_service.fuse_bands_weighted(da, da, WeightPair(wv=0.5, wt=0.5))

    assert all(np.all(band.coeffs == 10.0) for band in first.bands)
    assert all(np.allclose(band.coeffs, 4.372, atol=1e-12) for band in table.bands)
    assert all(np.all(band.coeffs == 10.0) for band in equal.bands)


def test_weighted_rule_swap_symmetry(
    fusion_service: FusionService,
    wavelet_service: WaveletService,
    textured: ImageBuffer,
    other_textured: ImageBuffer,
) -> None:
    da = wavelet_service.dwt_forward(textured)
    db = wavelet_service.dwt_forward(other_textured)
    weights = WeightPair(wv=0.3, wt=0.7)

    forward = fusion_service.fuse_bands_weighted(da, db, weights)
    swapped = fusion_service.fuse_bands_weighted(db, da, weights.swapped())

    for a, b in zip(forward.bands, swapped.bands):
        np.testing.assert_array_equal(a.coeffs, b.coeffs)


@pytest.mark.parametrize("transform", [TransformKind.DECIMATED, TransformKind.UNDECIMATED])
def test_max_rule_swap_differs_only_on_ties(
    fusion_service: FusionService,
    wavelet_service: WaveletService,
    rng: np.random.Generator,
    transform: TransformKind,
) -> None:
    # integer-valued sources make equal magnitudes with opposite signs common
    da = wavelet_service.forward(ImageBuffer.from_plane(rng.integers(0, 4, (16, 16))), transform)
    db = wavelet_service.forward(ImageBuffer.from_plane(rng.integers(0, 4, (16, 16))), transform)

    forward = fusion_service.fuse_bands_max(da, db)
    swapped = fusion_service.fuse_bands_max(db, da)

    np.testing.assert_array_equal(forward.approximation.coeffs, swapped.approximation.coeffs)
    for f, s, a, b in zip(forward.details, swapped.details, da.details, db.details):
        differs = f.coeffs != s.coeffs
        assert np.all(np.abs(a.coeffs[differs]) == np.abs(b.coeffs[differs]))
        distinct = np.abs(a.coeffs) != np.abs(b.coeffs)
        np.testing.assert_array_equal(f.coeffs[distinct], s.coeffs[distinct])


def test_mixed_transforms_rejected(
    fusion_service: FusionService, wavelet_service: WaveletService
) -> None:
    image = constant_image(1.0, 8, 8)

    with pytest.raises(TransformMismatchError):
        fusion_service.fuse_bands_max(
            wavelet_service.dwt_forward(image), wavelet_service.udwt_forward(image)
        )


def test_mismatched_sizes_rejected(
    fusion_service: FusionService, wavelet_service: WaveletService
) -> None:
    with pytest.raises(ShapeMismatchError):
        fusion_service.fuse_bands_max(
            wavelet_service.dwt_forward(constant_image(1.0, 8, 8)),
            wavelet_service.dwt_forward(constant_image(1.0, 16, 16)),
        )


@pytest.mark.parametrize("method", list(FusionMethod))
def test_self_fusion_identity(
    fusion_service: FusionService, textured: ImageBuffer, method: FusionMethod
) -> None:
    result = fusion_service.fuse(textured, textured, method)

    assert np.max(np.abs(result.fused.samples - textured.samples)) < 1e-6
    if result.weights is not None:
        assert all(abs(w.wv + w.wt - 1.0) <= 1e-12 for w in result.weights)


def test_constant_pair_fuses_to_mean(fusion_service: FusionService) -> None:
    result = fusion_service.fuse(constant_image(60.0), constant_image(140.0), FusionMethod.DWT)
    np.testing.assert_allclose(result.fused.samples, 100.0, atol=1e-9)


def test_unregistered_sources_rejected(fusion_service: FusionService) -> None:
    with pytest.raises(ShapeMismatchError):
        fusion_service.fuse(
            constant_image(1.0, 8, 8), constant_image(1.0, 16, 16), FusionMethod.DWT
        )


def _shift_error(
    fusion_service: FusionService,
    wavelet_service: WaveletService,
    a: ImageBuffer,
    b: ImageBuffer,
    transform: TransformKind,
) -> float:
    def fused_plane(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        dx = wavelet_service.forward(ImageBuffer.from_plane(x), transform)
        dy = wavelet_service.forward(ImageBuffer.from_plane(y), transform)
        return wavelet_service.inverse(fusion_service.fuse_bands_max(dx, dy)).plane()

    plain = fused_plane(a.plane(), b.plane())
    shifted = fused_plane(np.roll(a.plane(), (3, 3), (0, 1)), np.roll(b.plane(), (3, 3), (0, 1)))
    return float(np.max(np.abs(np.roll(shifted, (-3, -3), (0, 1)) - plain)))


def test_undecimated_pipeline_is_shift_covariant(
    fusion_service: FusionService,
    wavelet_service: WaveletService,
    textured: ImageBuffer,
    other_textured: ImageBuffer,
) -> None:
    udwt_error = _shift_error(
        fusion_service, wavelet_service, textured, other_textured, TransformKind.UNDECIMATED
    )
    dwt_error = _shift_error(
        fusion_service, wavelet_service, textured, other_textured, TransformKind.DECIMATED
    )

    assert udwt_error < 1e-9
    assert dwt_error > 1e-3
    assert dwt_error > 100 * udwt_error


def test_rgb_fusion_reports_weights_per_channel(
    fusion_service: FusionService, phantom_service: PhantomService
) -> None:
    a, b = phantom_service.make_pair(size=32, seed=4, rgb=True)

    sequential = fusion_service.fuse(a, b, FusionMethod.UDWT_GA, GaConfig())
    threaded = fusion_service.fuse(a, b, FusionMethod.UDWT_GA, GaConfig(), workers=3)

    assert sequential.weights is not None and len(sequential.weights) == 3
    assert sequential.weights == threaded.weights
    np.testing.assert_array_equal(sequential.fused.samples, threaded.fused.samples)
    assert sequential.fused.is_in_range
