import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fpdetect.errors import (
    ImageShapeError,
    MalformedHeaderError,
    MaxvalError,
    RawLengthError,
    RoiTooSmallError,
    TruncatedPayloadError,
)
from fpdetect.imageio import GrayImage, center_roi, load_pgm, load_raw, save_pgm, save_raw

sizes = st.tuples(st.integers(3, 24), st.integers(3, 24))


@st.composite
def images(draw):
    w, h = draw(sizes)
    data = draw(st.binary(min_size=w * h, max_size=w * h))
    return GrayImage.from_bytes(data, w, h)


def test_load_all_zero():
    img = load_pgm(b"P5 3 3 255\n" + bytes(9))
    assert img.size == (3, 3)
    assert not img.pixels.any()


def test_load_preserves_order_and_comments():
    data = b"P5\n# made by hand\n3 3\n# another\n255\n" + bytes(range(9))
    img = load_pgm(data)
    assert img.pixels.tolist() == [[0, 1, 2], [3, 4, 5], [6, 7, 8]]


def test_truncated_payload():
    with pytest.raises(TruncatedPayloadError):
        load_pgm(b"P5\n4 4\n255\n" + bytes(15))


@pytest.mark.parametrize(
    "data, exc",
    [
        (b"P2\n3 3\n255\n" + bytes(9), MalformedHeaderError),
        (b"P5\n3 x\n255\n" + bytes(9), MalformedHeaderError),
        (b"P5\n3 3\n", MalformedHeaderError),
        (b"P5\n3 3\n65535\n" + bytes(18), MaxvalError),
        (b"P5\n3 3\n0\n" + bytes(9), MaxvalError),
    ],
)
def test_parse_errors_are_distinct(data, exc):
    with pytest.raises(exc):
        load_pgm(data)


def test_save_canonical():
    assert save_pgm(GrayImage(np.full((3, 3), 7))) [:11] == b"P5\n3 3\n255\n"
    one = GrayImage.__new__(GrayImage)  # 1x1 bypasses the 3x3 minimum only for encoding
    object.__setattr__(one, "pixels", np.array([[7]], dtype=np.uint8))
    assert save_pgm(one) == b"P5\n1 1\n255\n\x07"


def test_save_all_white():
    img = GrayImage(np.full((3, 3), 255))
    assert save_pgm(img) == b"P5\n3 3\n255\n" + b"\xff" * 9


@given(images())
def test_pgm_round_trip(img):
    data = save_pgm(img)
    assert save_pgm(load_pgm(data)) == data
    assert load_pgm(data) == img


def test_raw():
    img = load_raw(bytes(range(9)), 3, 3)
    assert img.pixels[2, 0] == 6
    with pytest.raises(RawLengthError):
        load_raw(bytes(8), 3, 3)


def test_raw_spec_shapes():
    # a 3x2 frame is below the 3x3 pipeline minimum, so it is rejected at construction
    with pytest.raises(ImageShapeError):
        load_raw(bytes(6), 3, 2)
    with pytest.raises(RawLengthError):
        load_raw(bytes(5), 3, 2)


@given(images())
def test_raw_round_trip(img):
    assert load_raw(save_raw(img), img.width, img.height) == img


def test_image_is_immutable():
    img = GrayImage(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        img.pixels[0, 0] = 1


def test_rejects_out_of_range():
    with pytest.raises(ImageShapeError):
        GrayImage(np.full((3, 3), 300))


def test_roi_identity():
    img = GrayImage(np.arange(12 * 10).reshape(10, 12) % 256)
    assert center_roi(img, 1) == img


def test_roi_reference_frame():
    img = GrayImage(np.zeros((360, 256)))
    roi = center_roi(img, 2 / 3)
    # round(256 * sqrt(2/3)) = 209, round(360 * sqrt(2/3)) = 294
    assert roi.size == (209, 294)


def test_roi_too_small():
    with pytest.raises(RoiTooSmallError):
        center_roi(GrayImage(np.zeros((3, 3))), 0.1)


@given(images(), st.floats(0.05, 1.0))
def test_roi_is_a_centred_window(img, frac):
    try:
        roi = center_roi(img, frac)
    except RoiTooSmallError:
        return
    x0 = (img.width - roi.width) // 2
    y0 = (img.height - roi.height) // 2
    assert x0 >= 0 and y0 >= 0
    assert x0 + roi.width <= img.width and y0 + roi.height <= img.height
    np.testing.assert_array_equal(roi.pixels, img.pixels[y0 : y0 + roi.height, x0 : x0 + roi.width])
