import math

import numpy as np
import pytest

from fpdetect.corpus import (
    MANIFEST_NAME,
    NOISE_KINDS,
    Label,
    gen_noise,
    gen_ridge_pattern,
    load_corpus_dir,
    make_corpus,
    read_manifest,
    regenerate,
    ridge_normal_field,
    write_corpus,
)
from fpdetect.errors import InvalidPeriodError
from fpdetect.imageio import save_pgm
from fpdetect.orientation import block_sum_arrays, sobel_gradients
from fpdetect.ridge_features import CandidateMask


def test_ridge_deterministic_and_labelled():
    a = gen_ridge_pattern(64, 80, 8, "constant", 5)
    b = gen_ridge_pattern(64, 80, 8, "constant", 5)
    assert a.image == b.image and a.label is Label.PRESENT


def test_vertical_stripes():
    img = gen_ridge_pattern(64, 64, 8, "constant", 0, angle=0.0).image.pixels.astype(int)
    # angle 0 varies only along x, up to the amplitude jitter
    assert np.abs(img - img[0]).max() <= 25
    assert np.abs(np.diff(img, axis=1)).mean() > 20


@pytest.mark.parametrize("period", [3, 17])
def test_bad_period(period):
    with pytest.raises(InvalidPeriodError):
        gen_ridge_pattern(64, 64, period)


@pytest.mark.parametrize("kind", NOISE_KINDS)
def test_noise_deterministic(kind):
    a = gen_noise(50, 40, kind, 9)
    assert a.image == gen_noise(50, 40, kind, 9).image
    assert a.label is Label.ABSENT and a.image.size == (50, 40)


def test_regenerate_from_descriptor():
    for f in make_corpus("mixed", 10, 96, 120, seed=2):
        again = regenerate(f.generator, f.seed, 96, 120)
        assert save_pgm(again.image) == save_pgm(f.image)


def _angle_diff(a, b):
    """Distance between two axial angles (mod pi)."""
    d = (a - b) % math.pi
    return min(d, math.pi - d)


@pytest.mark.parametrize("style, seed, angle", [("constant", 1, 0.0), ("constant", 2, 0.7), ("constant", 3, 2.2),
                                                ("whorl", 4, 0.0), ("whorl", 5, 0.0)])
def test_block_orientation_matches_construction(style, seed, angle):
    w, h, bs = 256, 360, 16
    f = gen_ridge_pattern(w, h, 9, style, seed, angle)
    field = sobel_gradients(f.image, CandidateMask.full(w, h))
    sxx, sxy = block_sum_arrays(field, bs)
    normal = ridge_normal_field(f.generator, seed, w, h)
    checked = 0
    for by in range(1, sxx.shape[0] - 1):
        for bx in range(1, sxx.shape[1] - 1):
            cy, cx = by * bs + bs // 2, bx * bs + bs // 2
            # skip blocks around the whorl centre, where the true orientation is not coherent
            local = normal[by * bs : (by + 1) * bs, bx * bs : (bx + 1) * bs]
            if abs(np.exp(2j * local).mean()) < 0.95:
                continue
            grad_dir = 0.5 * math.atan2(sxy[by, bx], sxx[by, bx])
            assert math.degrees(_angle_diff(grad_dir, normal[cy, cx])) <= 10
            checked += 1
    assert checked > 100


def test_mixed_split_and_names():
    frames = make_corpus("mixed", 10)
    assert [f.label for f in frames] == [Label.PRESENT] * 5 + [Label.ABSENT] * 5
    assert [f.name for f in frames][:2] == ["000_ridge.pgm", "001_ridge.pgm"]


def test_noise_cycles_kinds():
    kinds = [f.generator.split("=")[1] for f in make_corpus("noise", 8)]
    assert kinds == list(NOISE_KINDS) * 2


def test_write_and_load(tmp_path):
    frames = make_corpus("mixed", 6, 64, 64, seed=1)
    manifest = write_corpus(frames, tmp_path)
    assert manifest.name == MANIFEST_NAME
    entries = read_manifest(manifest)
    assert [e[0] for e in entries] == [f.name for f in frames]
    loaded = load_corpus_dir(tmp_path)
    assert [f.image for f in loaded] == [f.image for f in frames]
    assert [f.label for f in loaded] == [f.label for f in frames]


def test_write_is_idempotent(tmp_path):
    frames = make_corpus("ridge", 3, 64, 64, seed=4)
    write_corpus(frames, tmp_path / "a")
    write_corpus(make_corpus("ridge", 3, 64, 64, seed=4), tmp_path / "b")
    for p in sorted((tmp_path / "a").iterdir()):
        assert p.read_bytes() == (tmp_path / "b" / p.name).read_bytes()


def test_load_empty_dir(tmp_path):
    assert load_corpus_dir(tmp_path) == []


def test_load_without_manifest(tmp_path):
    frames = make_corpus("mixed", 4, 64, 64, seed=6)
    (tmp_path / "absent").mkdir()
    for i, f in enumerate(frames):
        sub = tmp_path / ("absent" if f.label is Label.ABSENT else "")
        (sub / f"f{i}.pgm").write_bytes(save_pgm(f.image))
    (tmp_path / "zz_broken.pgm").write_bytes(b"P5\n9 9\n255\n" + bytes(3))
    loaded = load_corpus_dir(tmp_path)
    assert [f.name for f in loaded] == ["absent/f2.pgm", "absent/f3.pgm", "f0.pgm", "f1.pgm", "zz_broken.pgm"]
    assert [f.label for f in loaded][:4] == [Label.ABSENT, Label.ABSENT, Label.PRESENT, Label.PRESENT]
    assert loaded[-1].image is None and "Truncated" in loaded[-1].error
