"""Labelled synthetic frames and PGM corpus directories.

Randomness comes from numpy's PCG64 generator (``numpy.random.default_rng``),
so a frame is reproduced exactly from its generator descriptor, seed and size.
Manifests are tab-separated text, one frame per line::

    # filename	label	generator	seed
    000_ridge.pgm	present	ridge:style=whorl,period=9,angle=0.0	1234
"""

from __future__ import annotations

import enum
import hashlib
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import FpDetectError, InvalidPeriodError
from .imageio import GrayImage, load_pgm, save_pgm

MANIFEST_NAME = "manifest.txt"
NOISE_KINDS = ("salt_pepper", "uniform", "blobs", "dead_lines")
RIDGE_STYLES = ("constant", "whorl")

# fraction of pixels hit by impulse noise
IMPULSE_DENSITY = 0.004


class Label(str, enum.Enum):
    PRESENT = "present"
    ABSENT = "absent"


@dataclass(frozen=True)
class LabeledFrame:
    image: GrayImage | None
    label: Label
    generator: str
    seed: int
    name: str = ""
    error: str | None = None


def _to_u8(values: np.ndarray) -> np.ndarray:
    return np.clip(np.floor(values + 0.5), 0, 255).astype(np.uint8)


def _descriptor(family: str, **params) -> str:
    return family + ":" + ",".join(f"{k}={v}" for k, v in params.items())


def gen_ridge_pattern(
    width: int,
    height: int,
    period: float,
    orientation_style: str = "constant",
    seed: int = 0,
    angle: float = 0.0,
) -> LabeledFrame:
    """Sinusoidal ridges, ``128 + 100 cos(2π φ / period)`` with mild amplitude jitter.

    ``constant``: φ = x cos(angle) + y sin(angle), so ``angle`` is the
    direction across the ridges (0 gives vertical stripes). ``whorl``: φ is
    the distance to a centre near the middle of the frame, giving concentric
    ridges.
    """
    if not 4 <= period <= min(width, height) / 4:
        raise InvalidPeriodError(f"period {period} outside 4..{min(width, height) / 4}")
    if orientation_style not in RIDGE_STYLES:
        raise ValueError(f"unknown orientation style {orientation_style!r}")
    rng = np.random.default_rng(seed)
    phi = _ridge_phase(rng, width, height, orientation_style, angle)[0]
    phase = rng.uniform(0, 2 * math.pi)
    amplitude = 100.0 * (1.0 + rng.uniform(-0.1, 0.1, size=(height, width)))
    img = _to_u8(128.0 + amplitude * np.cos(2 * math.pi * phi / period + phase))
    gen = _descriptor("ridge", style=orientation_style, period=period, angle=angle)
    return LabeledFrame(GrayImage(img), Label.PRESENT, gen, seed)


def _ridge_phase(rng, width, height, style, angle):
    """Distance-along-normal field and the normal direction (radians) per pixel."""
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    if style == "constant":
        phi = x * math.cos(angle) + y * math.sin(angle)
        return phi, np.full(phi.shape, angle)
    cx = width / 2 + rng.uniform(-width / 16, width / 16)
    cy = height / 2 + rng.uniform(-height / 16, height / 16)
    return np.hypot(x - cx, y - cy), np.arctan2(y - cy, x - cx)


def ridge_normal_field(generator: str, seed: int, width: int, height: int) -> np.ndarray:
    """Direction across the ridges (radians, y down) of a generated ridge frame."""
    kind, p = _parse_descriptor(generator)
    if kind != "ridge":
        raise ValueError(f"{generator!r} is not a ridge generator")
    rng = np.random.default_rng(seed)
    return _ridge_phase(rng, width, height, p["style"], float(p["angle"]))[1]


def _salt_pepper(rng, width, height, density):
    img = np.full((height, width), 128, dtype=np.uint8)
    hit = rng.random((height, width)) < density
    img[hit] = np.where(rng.random(int(hit.sum())) < 0.5, 0, 255)
    return img


def _uniform(rng, width, height, density):
    # random-valued impulses: hit pixels take any intensity 0..255
    img = np.full((height, width), 128, dtype=np.uint8)
    hit = rng.random((height, width)) < density
    img[hit] = rng.integers(0, 256, size=int(hit.sum()), dtype=np.uint8)
    return img


def _blobs(rng, width, height):
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    field = np.full((height, width), 128.0)
    for _ in range(int(rng.integers(3, 7))):
        cx, cy = rng.uniform(0, width), rng.uniform(0, height)
        sigma = rng.uniform(40, 80)
        amp = rng.choice([-1, 1]) * rng.uniform(30, 70)
        field += amp * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2 * sigma**2))
    return _to_u8(field)


def _dead_lines(rng, width, height):
    img = np.full((height, width), 128, dtype=np.uint8)
    for _ in range(int(rng.integers(1, 4))):
        img[int(rng.integers(0, height)), :] = rng.choice([0, 255])
    for _ in range(int(rng.integers(0, 3))):
        img[:, int(rng.integers(0, width))] = rng.choice([0, 255])
    return img


def gen_noise(width: int, height: int, kind: str, seed: int = 0) -> LabeledFrame:
    """Fingerprint-free frame with persistent sensor-style noise.

    salt_pepper: sparse 0/255 impulses on mid-gray. uniform: sparse impulses
    of uniformly random intensity. blobs: a few broad smooth blotches.
    dead_lines: stuck full rows/columns at 0 or 255.
    """
    rng = np.random.default_rng(seed)
    if kind == "salt_pepper":
        img = _salt_pepper(rng, width, height, IMPULSE_DENSITY)
    elif kind == "uniform":
        img = _uniform(rng, width, height, IMPULSE_DENSITY)
    elif kind == "blobs":
        img = _blobs(rng, width, height)
    elif kind == "dead_lines":
        img = _dead_lines(rng, width, height)
    else:
        raise ValueError(f"unknown noise kind {kind!r}; choose from {NOISE_KINDS}")
    return LabeledFrame(GrayImage(img), Label.ABSENT, _descriptor("noise", kind=kind), seed)


def _parse_descriptor(generator: str) -> tuple[str, dict[str, str]]:
    kind, _, rest = generator.partition(":")
    params = dict(item.split("=", 1) for item in rest.split(",") if item)
    return kind, params


def regenerate(generator: str, seed: int, width: int, height: int) -> LabeledFrame:
    """Rebuild a frame from its manifest descriptor."""
    kind, p = _parse_descriptor(generator)
    if kind == "ridge":
        return gen_ridge_pattern(width, height, float(p["period"]), p["style"], seed, float(p["angle"]))
    if kind == "noise":
        return gen_noise(width, height, p["kind"], seed)
    raise ValueError(f"unknown generator {generator!r}")


def _ridge_frame(width: int, height: int, seed: int, index: int) -> LabeledFrame:
    rng = np.random.default_rng(seed)
    period = float(rng.integers(6, 13))
    style = RIDGE_STYLES[index % 2]
    angle = round(float(rng.uniform(0, math.pi)), 4) if style == "constant" else 0.0
    return gen_ridge_pattern(width, height, period, style, seed, angle)


def make_corpus(kind: str, count: int, width: int = 256, height: int = 360, seed: int = 0) -> list[LabeledFrame]:
    """Deterministic labelled corpus.

    ``kind`` is ``ridge``, ``noise`` (cycling through all noise kinds), a
    single noise kind, or ``mixed`` (first half ridge, rest noise).
    """
    seeds = [int(s) for s in np.random.SeedSequence(seed).generate_state(max(count, 1))][:count]
    if kind == "mixed":
        n_ridge = count - count // 2
        kinds = ["ridge"] * n_ridge + [NOISE_KINDS[i % 4] for i in range(count - n_ridge)]
    elif kind == "noise":
        kinds = [NOISE_KINDS[i % 4] for i in range(count)]
    elif kind == "ridge" or kind in NOISE_KINDS:
        kinds = [kind] * count
    else:
        raise ValueError(f"unknown corpus kind {kind!r}")
    frames = []
    for i, (k, s) in enumerate(zip(kinds, seeds)):
        f = _ridge_frame(width, height, s, i) if k == "ridge" else gen_noise(width, height, k, s)
        frames.append(LabeledFrame(f.image, f.label, f.generator, f.seed, f"{i:03d}_{k}.pgm"))
    return frames


def write_corpus(frames: Iterable[LabeledFrame], out_dir: str | os.PathLike) -> Path:
    """Write frames as PGM plus a manifest; returns the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["# filename\tlabel\tgenerator\tseed"]
    for f in frames:
        if f.image is None:
            continue
        (out / f.name).write_bytes(save_pgm(f.image))
        lines.append(f"{f.name}\t{f.label.value}\t{f.generator}\t{f.seed}")
    manifest = out / MANIFEST_NAME
    manifest.write_text("\n".join(lines) + "\n")
    return manifest


def read_manifest(path: str | os.PathLike) -> list[tuple[str, Label, str, int]]:
    entries = []
    for line in Path(path).read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, label, gen, seed = line.split("\t")
        entries.append((name, Label(label), gen, int(seed)))
    return entries


def manifest_digest(path: str | os.PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load_one(path: Path, name: str, label: Label, gen: str, seed: int) -> LabeledFrame:
    try:
        img = load_pgm(path.read_bytes())
    except (OSError, FpDetectError) as exc:
        return LabeledFrame(None, label, gen, seed, name, f"{type(exc).__name__}: {exc}")
    return LabeledFrame(img, label, gen, seed, name)


def load_corpus_dir(path: str | os.PathLike) -> list[LabeledFrame]:
    """Load a corpus directory.

    With a manifest, its entries (and labels) are used in manifest order.
    Otherwise every ``.pgm`` below ``path`` is loaded in lexicographic order
    of relative path, labelled by its parent directory name (``present`` or
    ``absent``), defaulting to present. Unreadable files yield frames with
    ``image=None`` and an ``error`` message.
    """
    root = Path(path)
    manifest = root / MANIFEST_NAME
    if manifest.is_file():
        return [_load_one(root / n, n, lab, g, s) for n, lab, g, s in read_manifest(manifest)]
    frames = []
    for p in sorted(root.rglob("*.pgm"), key=lambda q: q.relative_to(root).as_posix()):
        label = Label.ABSENT if p.parent.name.lower() == "absent" else Label.PRESENT
        frames.append(_load_one(p, p.relative_to(root).as_posix(), label, "file", 0))
    return frames
