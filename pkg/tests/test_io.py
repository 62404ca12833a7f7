import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lvsov import io


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_roundtrip(x):
    enc = io.encode(x)
    assert isinstance(enc, str) and io.decode_number(enc) == x


def test_encode_types():
    obj = {"i": np.int64(3), "b": np.bool_(True), "c": 1 + 2j, "q": Fraction(1, 3), "a": np.array([0.5]), "n": None}
    enc = io.encode(obj)
    assert enc == {"i": 3, "b": True, "c": {"re": "1.0", "im": "2.0"}, "q": "1/3", "a": ["0.5"], "n": None}
    assert io.decode_number(enc["c"]) == 1 + 2j
    assert io.decode_number(7) == 7
    json.loads(io.dumps(obj))


def test_read_state(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"V": ["0.1", 2, {"re": "1.0", "im": "0.5"}]}))
    V = io.read_state(p)
    assert V.dtype == complex and V[2] == 1 + 0.5j
    with pytest.raises(ValueError):
        io.read_state(p, L=4)
    p.write_text("{}")
    with pytest.raises(ValueError):
        io.read_state(p)


def test_trajectory_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    t = np.linspace(0, 1, 5)
    V, H = rng.random((5, 3)), rng.random((5, 2))
    p = tmp_path / "t.csv"
    io.write_trajectory_csv(p, t, V, H)
    header, data = io.read_trajectory_csv(p)
    assert header == ["t", "V_1", "V_2", "V_3", "H_1", "H_2"]
    assert np.array_equal(data, np.column_stack([t, V, H]))


def test_trajectory_complex(tmp_path):
    p = tmp_path / "t.csv"
    io.write_trajectory_csv(p, [0.0], np.array([[1 + 1j, 2]]), np.zeros((1, 0)))
    header, data = io.read_trajectory_csv(p)
    assert header == ["t", "V_1", "V_2"] and data[0, 1] == 1 + 1j


def test_table_csv(tmp_path):
    p = tmp_path / "t.csv"
    text = io.write_table_csv(p, [(3, 1), (4, 1)])
    assert text == p.read_text() == "L,g\n3,1\n4,1\n"
    assert io.write_table_csv(None, []) == "L,g\n"
