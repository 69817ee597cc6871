# File: tests/test_alist.py
import numpy as np
import pytest

from msldpc_core.alist import format_alist, parse_alist, read_alist, write_alist
from msldpc_core.codecraft import parity_check_matrix
from msldpc_core.errors import AlistFormatError
from msldpc_core.polyring import BinaryPolynomial


def test_small_matrix_layout():
    H = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    assert format_alist(H) == "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n"


def test_identity_matrix():
    H = parity_check_matrix(BinaryPolynomial.one(), 5).to_dense()
    lines = format_alist(H).splitlines()
    assert lines[:4] == ["5 5", "1 1", "1 1 1 1 1", "1 1 1 1 1"]
    assert lines[4:9] == ["1", "2", "3", "4", "5"]
    assert np.array_equal(parse_alist(format_alist(H)), H)


def test_circulant_survives_a_file(tmp_path):
    H = parity_check_matrix(BinaryPolynomial.from_text("1+x+x^2+x^4"), 7).reduced(4).to_dense()
    path = tmp_path / "hamming.alist"
    with open(path, "w", encoding="utf-8") as f:
        write_alist(H, f)
    assert np.array_equal(read_alist(str(path)), H)


def test_missing_file():
    with pytest.raises(OSError):
        read_alist("/nonexistent/matrix.alist")


@pytest.mark.parametrize("text", [
    "3 2\n2 2\n",
    "3 x\n2 2\n1 2 1\n2 2\n",
    "3 2\n2 2\n1 2\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n",
    "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n",
    "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n1 3\n",
    "3 2\n2 2\n1 2 1\n2 2\n3 0\n1 2\n2 0\n1 2\n2 3\n",
])
def test_malformed_alist(text):
    with pytest.raises(AlistFormatError):
        parse_alist(text)
