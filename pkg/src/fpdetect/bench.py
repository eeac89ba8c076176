"""Method comparison reports and compiled-vs-numpy kernel timings."""

from __future__ import annotations

import statistics
import time
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .baselines import BASELINES, METHOD_NAMES
from .corpus import Label, LabeledFrame
from .detector import DetectorConfig, detect
from .errors import FpDetectError
from .imageio import GrayImage

PROPOSAL = "proposal"
ALL_METHODS = (PROPOSAL,) + METHOD_NAMES

DESCRIPTIONS = {
    PROPOSAL: "Ridge orientation check",
    "method1_segmentation_brightness": "Segmentation + brightness difference (reconstruction)",
    "method2_brightness_difference": "Brightness difference (reconstruction)",
    "method3_histogram_analysis": "Histogram analysis (reconstruction)",
    "method4_zone_brightness": "Brightness difference in a zone (reconstruction)",
    "method5_reverse_area": "Fine-tile contrast area (reconstruction)",
}


def method_callable(name: str, config: DetectorConfig) -> Callable[[GrayImage], bool]:
    if name == PROPOSAL:
        return lambda img: detect(img, config).present
    try:
        fn = BASELINES[name]
    except KeyError:
        raise ValueError(f"unknown method {name!r}; choose from {', '.join(ALL_METHODS)}") from None
    return lambda img: fn(img).present


def run_bench(
    frames: Sequence[LabeledFrame],
    methods: Sequence[str] = ALL_METHODS,
    config: DetectorConfig | None = None,
    manifest_digest: str | None = None,
) -> dict:
    """Run every method on every frame.

    Everything except the ``timings`` key depends only on frame bytes,
    methods and config.
    """
    config = config or DetectorConfig()
    runners = {m: method_callable(m, config) for m in methods}
    verdicts: dict[str, list[str]] = {}
    matrix: dict[str, list[str]] = {}
    timings: dict[str, dict[str, float]] = {}
    for m, run in runners.items():
        row, cells, elapsed = [], [], []
        for f in frames:
            if f.image is None:
                row.append("error")
                cells.append("Fail")
                continue
            t0 = time.perf_counter_ns()
            try:
                present = run(f.image)
            except FpDetectError:
                row.append("error")
                cells.append("Fail")
                continue
            elapsed.append((time.perf_counter_ns() - t0) / 1000.0)
            v = Label.PRESENT if present else Label.ABSENT
            row.append(v.value)
            cells.append("OK" if v == f.label else "Fail")
        verdicts[m], matrix[m] = row, cells
        timings[m] = {
            "mean_us": statistics.fmean(elapsed) if elapsed else 0.0,
            "median_us": statistics.median(elapsed) if elapsed else 0.0,
        }
    return {
        "corpus": {
            "frames": [f.name for f in frames],
            "labels": [f.label.value for f in frames],
            "manifest_digest": manifest_digest,
        },
        "config": config.as_dict(),
        "methods": list(methods),
        "verdicts": verdicts,
        "matrix": matrix,
        "correct": {m: cells.count("OK") for m, cells in matrix.items()},
        "timings": timings,
    }


def format_report(report: dict, max_columns: int = 20) -> str:
    """Aligned text: OK/Fail matrix (or per-method totals) and timing table in ms."""
    methods = report["methods"]
    n = len(report["corpus"]["frames"])
    width = max(len(m) for m in methods + ["Method"])
    lines = []
    if n <= max_columns:
        head = ["Method".ljust(width)] + [f"Image{i + 1}".rjust(7) for i in range(n)]
        lines.append("  ".join(head))
        for m in methods:
            lines.append("  ".join([m.ljust(width)] + [c.rjust(7) for c in report["matrix"][m]]))
    else:
        lines.append(f"{'Method'.ljust(width)}  {'OK':>6}  {'Fail':>6}")
        for m in methods:
            ok = report["correct"][m]
            lines.append(f"{m.ljust(width)}  {ok:>6}  {n - ok:>6}")
    lines.append("")
    dw = max(len(DESCRIPTIONS.get(m, m)) for m in methods)
    lines.append(f"{'Method'.ljust(width)}  {'Description'.ljust(dw)}  {'Mean (ms)':>9}  {'Median (ms)':>11}")
    for m in methods:
        t = report["timings"][m]
        lines.append(
            f"{m.ljust(width)}  {DESCRIPTIONS.get(m, m).ljust(dw)}  "
            f"{t['mean_us'] / 1000:>9.1f}  {t['median_us'] / 1000:>11.1f}"
        )
    return "\n".join(lines)


def _time_call(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best * 1e6


def compare_backends(width: int = 256, height: int = 360, repeat: int = 20, seed: int = 0) -> dict:
    """Best-of-``repeat`` microseconds per kernel for each available backend."""
    from .corpus import gen_ridge_pattern

    img = gen_ridge_pattern(width, height, 9, "whorl", seed).image.pixels
    ref = kernels._pykernels
    smooth = ref.box_mean3(img)
    binary = (smooth <= 128).astype(np.uint8)
    mask = ref.candidate_mask(binary)
    gx, gy = ref.masked_sobel(smooth, mask)
    out: dict[str, dict[str, float]] = {}
    for name, impl in kernels.available_backends().items():
        out[name] = {
            "box_mean3": _time_call(lambda: kernels.box_mean3(img, impl=impl), repeat),
            "candidate_mask": _time_call(lambda: kernels.candidate_mask(binary, impl=impl), repeat),
            "masked_sobel": _time_call(lambda: kernels.masked_sobel(smooth, mask, impl=impl), repeat),
            "block_sums": _time_call(lambda: kernels.block_sums(gx, gy, 16, impl=impl), repeat),
        }
    return out
