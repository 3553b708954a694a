import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from deepmorph import netpbm
from deepmorph.netpbm import NetpbmError


@given(arrays(np.uint8, st.tuples(st.integers(1, 9), st.integers(1, 9), st.just(3))))
def test_rgb_round_trip(px):
    img = netpbm.decode(netpbm.encode(px.astype(float)))
    assert np.array_equal(img.pixels, px.astype(float))


def test_gray_round_trip(tmp_path):
    px = np.arange(12, dtype=float).reshape(3, 4) * 20
    netpbm.write_image(tmp_path / "a.pgm", px)
    data = (tmp_path / "a.pgm").read_bytes()
    assert data.startswith(b"P5\n4 3\n255\n")
    assert np.array_equal(netpbm.read_image(tmp_path / "a.pgm").pixels, px)


def test_encode_rounds_half_even_and_clips():
    body = netpbm.encode(np.array([[0.5, 1.5, 254.6, 255.0]]))
    assert list(body[-4:]) == [0, 2, 255, 255]


def test_header_comments_and_maxval_scaling():
    data = b"P5 # comment\n# another\n2 1\n# x\n15\n" + bytes([0, 15])
    img = netpbm.decode(data)
    assert img.pixels.tolist() == [[0.0, 255.0]]


@pytest.mark.parametrize("data", [
    b"P3\n1 1\n255\n0 0 0",
    b"P5\n1 1\n",
    b"P5\n2 2\n255\n\x00",
    b"P5\n1 1\n65535\n\x00\x00",
    b"P5\nx 1\n255\n\x00",
    b"P5\n0 1\n255\n",
])
def test_bad_files(data):
    with pytest.raises(NetpbmError):
        netpbm.decode(data)


def test_encode_rejects_odd_shapes():
    with pytest.raises(NetpbmError):
        netpbm.encode(np.zeros((2, 2, 2)))
