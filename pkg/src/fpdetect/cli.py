"""Command-line interface: ``fpdetect detect|bench|corpus|kernels``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import kernels
from .bench import ALL_METHODS, compare_backends, format_report, run_bench
from .binarization import ThresholdPolicy
from .corpus import MANIFEST_NAME, load_corpus_dir, make_corpus, manifest_digest, write_corpus
from .detector import DetectorConfig, detect
from .errors import ConfigError, FpDetectError
from .imageio import load_pgm, load_raw

EXIT_PRESENT, EXIT_ABSENT, EXIT_ERROR = 0, 1, 2

_INT_KEYS = ("block_size", "feature_threshold", "large_image_pixel_cutoff", "fixed_threshold",
             "reference_width", "reference_height")
_FLOAT_KEYS = ("roi_area_fraction",)
_BOOL_KEYS = ("scale_threshold_with_area",)


def _parse_bool(key: str, text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {text!r}")


def parse_config_text(text: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        try:
            if key in _INT_KEYS:
                values[key] = int(val)
            elif key in _FLOAT_KEYS:
                values[key] = float(val)
            elif key in _BOOL_KEYS:
                values[key] = _parse_bool(key, val)
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"line {lineno}: bad value for {key}: {val!r}") from None
    return values


def build_config(values: dict) -> DetectorConfig:
    d = DetectorConfig()
    pol = d.threshold_policy
    try:
        return DetectorConfig(
            block_size=values.get("block_size", d.block_size),
            feature_threshold=values.get("feature_threshold", d.feature_threshold),
            roi_area_fraction=values.get("roi_area_fraction", d.roi_area_fraction),
            threshold_policy=ThresholdPolicy(
                values.get("large_image_pixel_cutoff", pol.large_image_pixel_cutoff),
                values.get("fixed_threshold", pol.fixed_threshold),
            ),
            reference_size=(
                values.get("reference_width", d.reference_size[0]),
                values.get("reference_height", d.reference_size[1]),
            ),
            scale_threshold_with_area=values.get("scale_threshold_with_area", d.scale_threshold_with_area),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _config_from_args(args) -> DetectorConfig:
    values = {}
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc.strerror}") from None
        values.update(parse_config_text(text))
    for key in ("block_size", "feature_threshold", "roi_area_fraction", "fixed_threshold",
                "large_image_pixel_cutoff"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if getattr(args, "no_scale", False):
        values["scale_threshold_with_area"] = False
    return build_config(values)


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--block-size", dest="block_size", type=int)
    p.add_argument("--threshold", dest="feature_threshold", type=int, help="feature block threshold")
    p.add_argument("--roi", dest="roi_area_fraction", type=float, help="centre ROI area fraction")
    p.add_argument("--fixed-threshold", dest="fixed_threshold", type=int)
    p.add_argument("--large-cutoff", dest="large_image_pixel_cutoff", type=int)
    p.add_argument("--no-scale", action="store_true", help="do not rescale the threshold by frame size")


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {text!r}") from None
    return w, h


def cmd_detect(args) -> int:
    config = _config_from_args(args)
    data = Path(args.image).read_bytes()
    img = load_raw(data, *args.raw) if args.raw else load_pgm(data)
    res = detect(img, config)
    if args.json:
        print(json.dumps(res.to_json(), indent=2))
    else:
        print(f"{args.image}: {res.verdict}")
        print(f"  feature_count          {res.feature_count}")
        print(f"  threshold_used         {res.threshold_used}")
        print(f"  binarization_threshold {res.binarization_threshold}")
        print("  timings (us)           " + ", ".join(f"{k}={v:.1f}" for k, v in res.stage_timings.items()))
    return EXIT_PRESENT if res.present else EXIT_ABSENT


def cmd_bench(args) -> int:
    config = _config_from_args(args)
    root = Path(args.corpus)
    if not root.is_dir():
        raise FpDetectError(f"corpus directory {root} not found")
    frames = load_corpus_dir(root)
    if not frames:
        raise FpDetectError(f"corpus {root} holds no frames")
    methods = [m.strip() for m in args.methods.split(",")] if args.methods else list(ALL_METHODS)
    for m in methods:
        if m not in ALL_METHODS:
            raise FpDetectError(f"unknown method {m!r}; choose from {', '.join(ALL_METHODS)}")
    manifest = root / MANIFEST_NAME
    digest = manifest_digest(manifest) if manifest.is_file() else None
    report = run_bench(frames, methods, config, digest)
    text = format_report(report)
    print(text)
    if args.out:
        out = Path(args.out)
        out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
        out.with_suffix(".txt").write_text(text + "\n")
    return 0


def cmd_corpus(args) -> int:
    frames = make_corpus(args.kind, args.count, args.width, args.height, args.seed)
    try:
        manifest = write_corpus(frames, args.out)
    except OSError as exc:
        raise FpDetectError(f"cannot write corpus to {args.out}: {exc.strerror}") from None
    print(f"wrote {len(frames)} frames and {manifest}")
    return 0


def cmd_kernels(args) -> int:
    result = compare_backends(args.width, args.height, args.repeat)
    print(f"active backend: {kernels.BACKEND}")
    names = list(result)
    print(f"{'kernel':<16}" + "".join(f"{n + ' (us)':>16}" for n in names))
    for k in next(iter(result.values())):
        print(f"{k:<16}" + "".join(f"{result[n][k]:>16.1f}" for n in names))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fpdetect", description="Fingerprint presence detection")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="check one frame; exit 0 present, 1 absent, 2 error")
    p.add_argument("image")
    p.add_argument("--json", action="store_true")
    p.add_argument("--raw", type=_parse_size, metavar="WxH", help="headerless 8-bit frame of this size")
    _add_config_flags(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("bench", help="compare methods over a corpus directory")
    p.add_argument("corpus")
    p.add_argument("--methods", help="comma-separated: " + ",".join(ALL_METHODS))
    p.add_argument("--out", help="JSON report path (a .txt table is written alongside)")
    _add_config_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("corpus", help="generate a labelled synthetic corpus")
    p.add_argument("kind", help="ridge, noise, mixed, salt_pepper, uniform, blobs or dead_lines")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--width", type=int, default=256)
    p.add_argument("--height", type=int, default=360)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("kernels", help="time the compiled and numpy kernels")
    p.add_argument("--width", type=int, default=256)
    p.add_argument("--height", type=int, default=360)
    p.add_argument("--repeat", type=int, default=20)
    p.set_defaults(func=cmd_kernels)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FpDetectError, OSError) as exc:
        print(f"fpdetect: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
