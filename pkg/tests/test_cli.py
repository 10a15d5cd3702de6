import time
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

from src.cli import run
from src.core.utils.json_utils import decode
from src.models.dto import ImageBuffer
from src.services.image import ImageService


@pytest.fixture(autouse=True)
def report_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    directory = tmp_path / "reports"
    monkeypatch.setenv("WAVEFUSE_REPORT_DIR", str(directory))
    return directory


@pytest.fixture
def source(tmp_path: Path, image_service: ImageService, textured: ImageBuffer) -> Path:
    path = tmp_path / "x.png"
    image_service.save_image(textured, path)
    return path


@pytest.fixture
def flat(tmp_path: Path, image_service: ImageService) -> Path:
    path = tmp_path / "flat.png"
    image_service.save_image(ImageBuffer.from_plane(np.full((16, 16), 90.0)), path)
    return path


def _pixels(path: Path) -> np.ndarray:
    with Image.open(path) as raster:
        return np.asarray(raster)


def _fuse(method: str, in1: Path, in2: Path, out: Path, *extra: str) -> int:
    argv = ["fuse", "--method", method, "--in1", str(in1), "--in2", str(in2), "--out", str(out)]
    return run([*argv, *extra])


def _metrics(src1: Path, src2: Path, fused: Path, *extra: str) -> int:
    return run(["metrics", "--src1", str(src1), "--src2", str(src2), "--fused", str(fused), *extra])


def test_fuse_self_is_identity(tmp_path: Path, source: Path) -> None:
    out = tmp_path / "f.png"

    code = _fuse("dwt", source, source, out)

    assert code == 0
    np.testing.assert_array_equal(_pixels(out), _pixels(source))
    assert not (tmp_path / "f.weights.json").exists()


def test_fuse_ga_writes_weights(tmp_path: Path, source: Path) -> None:
    out = tmp_path / "f.png"

    code = _fuse("dwt-ga", source, source, out, "--trace")

    assert code == 0
    weights = decode((tmp_path / "f.weights.json").read_bytes())
    assert weights["wv"] + weights["wt"] == pytest.approx(1.0, abs=1e-12)
    assert len(weights["per_channel"]) == 1
    assert weights["trace"][0]["generations"]


def test_fuse_weights_out_and_overrides(tmp_path: Path, source: Path, flat: Path) -> None:
    target = tmp_path / "nested" / "w.json"

    code = _fuse(
        "udwt-ga",
        source,
        flat,
        tmp_path / "f.pgm",
        "--weights-out",
        str(target),
        "--ga-trials",
        "4",
        "--ga-max-gen",
        "2",
        "--no-ga-refine",
    )

    assert code == 0
    assert "trace" not in decode(target.read_bytes())


@pytest.mark.parametrize(
    "argv",
    [
        ["fuse", "--method", "dwt", "--in1", "a.png", "--out", "f.png"],
        ["fuse", "--method", "wavelet", "--in1", "a.png", "--in2", "b.png", "--out", "f.png"],
        ["metrics", "--src1", "a.png"],
        ["unknown"],
        [],
    ],
)
def test_usage_errors(argv: list[str]) -> None:
    assert run(argv) == 2


def test_invalid_ga_parameter(tmp_path: Path, source: Path) -> None:
    code = _fuse("dwt-ga", source, source, tmp_path / "f.png", "--ga-trials", "1")
    assert code == 2


def test_missing_input_is_processing_error(
    tmp_path: Path, source: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    code = _fuse("dwt", source, tmp_path / "missing.png", tmp_path / "f.png")

    assert code == 1
    assert capsys.readouterr().err.splitlines()[-1].startswith("error: ")


def test_metrics_json_on_identical_triple(
    flat: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    code = _metrics(flat, flat, flat)

    assert code == 0
    report = decode(capsys.readouterr().out.encode())
    assert list(report) == ["ie", "mi", "rmse", "psnr", "qi", "sf"]
    assert report["ie"] == 0.0
    assert report["psnr"] == "inf"
    assert report["qi"] is None


def test_metrics_csv_to_file(tmp_path: Path, source: Path, flat: Path) -> None:
    out = tmp_path / "m.csv"

    code = _metrics(source, flat, source, "--format", "csv", "--out", str(out))

    assert code == 0
    header, row = out.read_text(encoding="utf-8").splitlines()
    assert header == "ie,mi,rmse,psnr,qi,sf"
    assert len(row.split(",")) == 6


def test_metrics_shape_mismatch(tmp_path: Path, source: Path, flat: Path) -> None:
    code = _metrics(source, source, flat)
    assert code == 1


def test_benchmark_end_to_end(tmp_path: Path, report_dir: Path) -> None:
    data = tmp_path / "data"
    assert run(["synth", "--out-dir", str(data), "--count", "1", "--size", "32"]) == 0

    config = str(data / "benchmark.toml")
    assert run(["benchmark", "--config", config]) == 0
    first = (report_dir / "benchmark.json").read_bytes()
    assert run(["benchmark", "--config", config, "--workers", "2"]) == 0
    second = (report_dir / "benchmark.json").read_bytes()

    assert first == second
    report = decode(first)
    assert len(report["metrics"]) == 24
    assert [row["method"] for row in report["weights"]] == ["A3", "A4"]


@pytest.mark.slow
def test_benchmark_full_size_is_fast_and_stable(tmp_path: Path, report_dir: Path) -> None:
    data = tmp_path / "data"
    assert run(["synth", "--out-dir", str(data), "--count", "4", "--size", "256"]) == 0
    config = str(data / "benchmark.toml")

    reports: list[bytes] = []
    for _ in range(2):
        started = time.perf_counter()
        assert run(["benchmark", "--config", config]) == 0
        assert time.perf_counter() - started < 30.0
        reports.append((report_dir / "benchmark.json").read_bytes())

    assert reports[0] == reports[1]
    report = decode(reports[0])
    assert [row["status"] for row in report["datasets"]] == ["ok"] * 4
    assert all(len(row["values"]) == 4 for row in report["metrics"])


def test_benchmark_timestamp_only_in_header(tmp_path: Path) -> None:
    data = tmp_path / "data"
    run(["synth", "--out-dir", str(data), "--count", "1", "--size", "16"])
    out = tmp_path / "stamped.json"

    config = str(data / "benchmark.toml")
    code = run(["benchmark", "--config", config, "--out", str(out), "--timestamp"])

    assert code == 0
    assert "generated_at" in decode(out.read_bytes())["header"]


def test_benchmark_without_datasets(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    config = tmp_path / "empty.toml"
    config.write_text('methods = ["dwt", "udwt"]\n', encoding="utf-8")

    assert run(["benchmark", "--config", str(config)]) == 2
    assert "no datasets" in capsys.readouterr().err


def test_benchmark_failed_dataset_exits_one(tmp_path: Path) -> None:
    config = tmp_path / "bench.toml"
    config.write_text(
        '[[datasets]]\nname = "lost"\nsource1 = "a.png"\nsource2 = "b.png"\n', encoding="utf-8"
    )
    out = tmp_path / "r.csv"

    assert run(["benchmark", "--config", str(config), "--format", "csv", "--out", str(out)]) == 1
    assert out.read_text(encoding="utf-8").splitlines()[-1] == "status,,,failed"


def test_synth_rejects_tiny_size(tmp_path: Path) -> None:
    assert run(["synth", "--out-dir", str(tmp_path), "--size", "2"]) == 2
