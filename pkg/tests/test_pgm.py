import numpy as np
import pytest
from hypothesis import given
from hypothesis.extra.numpy import arrays
from hypothesis import strategies as st

from cgkit.pgm import PgmError, decode, encode, read_pgm, write_pgm
from cgkit.problems import ImageGray, synthetic_image

levels = arrays(np.uint8, st.tuples(st.integers(1, 9), st.integers(1, 9)))


@pytest.mark.parametrize("magic", ["P2", "P5"])
@given(samples=levels)
def test_round_trip(magic, samples):
    img = ImageGray.from_array(samples / 255.0)
    assert decode(encode(img, magic)) == img


@pytest.mark.parametrize("magic", ["P2", "P5"])
def test_file_round_trip(tmp_path, magic):
    img = synthetic_image(20)
    path = tmp_path / "img.pgm"
    write_pgm(img, path, magic)
    assert read_pgm(path) == img
    assert list(tmp_path.iterdir()) == [path]


def test_quantization_rounds_half_up():
    img = ImageGray(3, 1, np.array([0.5 / 255, 1.0, 0.2]))
    raw = encode(img, "P5")
    assert raw.startswith(b"P5\n3 1\n255\n")
    # 0.2 * 255 = 51 exactly
    assert list(raw[-3:]) == [1, 255, 51]


def test_plain_format_layout():
    img = ImageGray(2, 2, np.array([0.0, 1.0, 1.0, 0.0]))
    assert encode(img, "P2") == b"P2\n2 2\n255\n0 255\n255 0\n"


def test_header_comments():
    data = b"P2\n# made by hand\n2 1 # trailing\n# another\n255\n10 20\n"
    img = decode(data)
    np.testing.assert_array_equal(img.pixels * 255, [10, 20])
    binary = b"P5 # c\n1 1\n255\n\x7f"
    assert decode(binary).pixels[0] * 255 == 127


def test_small_maxval_is_rescaled():
    assert decode(b"P2 2 1 4 0 4").pixels.tolist() == [0.0, 1.0]


@pytest.mark.parametrize(
    "data",
    [
        b"P6\n1 1\n255\n\x00",
        b"P2\n2 2\n255\n1 2 3\n",
        b"P5\n2 2\n255\n\x00\x01",
        b"P2\n2\n",
        b"P2\n1 1\n65535\n0\n",
        b"P2\n1 1\n255\n300\n",
        b"P2\n0 1\n255\n",
        b"P2\na b\n255\n",
    ],
)
def test_malformed(data):
    with pytest.raises(PgmError):
        decode(data)


def test_bad_magic_on_write():
    with pytest.raises(ValueError):
        encode(synthetic_image(4), "P6")
