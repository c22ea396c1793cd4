import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from l2interp.pgm import PgmError, encode_pgm, parse_pgm, read_image, write_image
from l2interp.resample import ImageBuffer


def test_ascii_with_comments():
    img = parse_pgm(b"P2\n# made by hand\n3 2\n# max\n255\n0 1 2\n# row\n253 254 255\n")
    assert img.bit_depth == 8
    assert img.samples.tolist() == [[0, 1, 2], [253, 254, 255]]


def test_binary_8bit():
    img = parse_pgm(b"P5 2 2 255\n" + bytes([0, 10, 200, 255]))
    assert img.samples.tolist() == [[0, 10], [200, 255]]


def test_binary_16bit_is_big_endian():
    img = parse_pgm(b"P5\n2 1\n4095\n" + bytes([0x0F, 0xFF, 0x01, 0x02]))
    assert img.bit_depth == 16
    assert img.samples.tolist() == [[4095, 258]]


def test_encode_layout():
    img = ImageBuffer(np.array([[1, 258]]), 16)
    assert encode_pgm(img) == b"P5\n2 1\n65535\n" + bytes([0, 1, 1, 2])
    assert encode_pgm(ImageBuffer(np.array([[7]]))).startswith(b"P5\n1 1\n255\n")


@pytest.mark.parametrize(
    "blob",
    [
        b"P6\n1 1\n255\n\x00\x00\x00",
        b"P5\n2 2\n255\n\x00\x00\x00",
        b"P2\n2 2\n255\n1 2 3",
        b"P5\n2",
        b"P2\nx 2\n255\n1 2",
        b"P2\n0 2\n255\n",
        b"P2\n1 1\n70000\n1",
        b"P2\n1 1\n10\n11",
        b"P2\n2 1\n255\n1 q",
        b"",
    ],
)
def test_malformed(blob):
    with pytest.raises(PgmError):
        parse_pgm(blob)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.sampled_from([8, 16]), st.integers(0, 2**32 - 1))
def test_round_trip(h, w, depth, seed):
    s = np.random.default_rng(seed).integers(0, 1 << depth, size=(h, w))
    img = ImageBuffer(s, depth)
    assert parse_pgm(encode_pgm(img)) == img


def test_file_round_trip(tmp_path):
    img = ImageBuffer(np.arange(12).reshape(3, 4) * 5000, 16)
    path = tmp_path / "a.pgm"
    write_image(img, path)
    assert read_image(path) == img
    with pytest.raises(OSError):
        read_image(tmp_path / "missing.pgm")


def test_two_by_two_ascii():
    img = parse_pgm(b"P2 2 2 255 0 64 128 255")
    assert img.bit_depth == 8
    assert img.samples.ravel().tolist() == [0, 64, 128, 255]
