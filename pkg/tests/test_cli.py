import json

import numpy as np
import pytest

from lvsov.cli import main
from lvsov.io import read_trajectory_csv


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def js(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestClassify:
    def test_n3_l11(self, capsys):
        code, d = js(capsys, "classify", "--N", "3", "--L", "11")
        assert code == 0
        assert (d["n1"], d["n2"], d["g"]) == (2, 3, 5)
        assert set(d) >= {"m", "n1", "n2", "m1", "m2", "k", "k1", "k2", "g", "n_H", "n0"}

    def test_n2_l4(self, capsys):
        code, d = js(capsys, "classify", "--N", "2", "--L", "4")
        assert code == 0 and (d["m"], d["n1"], d["n2"], d["g"]) == (2, 1, 1, 1)

    def test_below_range(self, capsys):
        code, out, err = run(capsys, "classify", "--N", "2", "--L", "2")
        assert code == 2 and "error" in err and out == ""

    def test_by_class(self, capsys):
        code, d = js(capsys, "classify", "--N", "3", "--m", "2", "--n1", "1", "--n2", "1")
        assert code == 0 and d["g"] == 4

    def test_both_l_and_class_rejected(self, capsys):
        code, _, _ = run(capsys, "classify", "--N", "2", "--L", "4", "--m", "2", "--n1", "1", "--n2", "1")
        assert code == 2

    def test_out_file(self, capsys, tmp_path):
        p = tmp_path / "c.json"
        code, d = js(capsys, "classify", "--N", "2", "--L", "6", "--out", str(p))
        assert code == 0 and json.loads(p.read_text()) == d


class TestVerify:
    @pytest.mark.parametrize("suite", ["rtt", "involution", "center", "pattern", "pq", "dimension"])
    def test_suites_pass(self, capsys, suite):
        code, d = js(capsys, "verify", suite, "--N", "2", "--L", "6", "--samples", "5")
        assert code == 0 and d["status"] == "PASS"
        assert all(c["status"] == "PASS" for c in d["checks"])

    def test_involution_28(self, capsys):
        code, d = js(capsys, "verify", "involution", "--N", "2", "--L", "8")
        assert code == 0 and d["status"] == "PASS"
        assert all(c.get("exact_zero", True) for c in d["checks"])

    def test_center_36(self, capsys):
        code, d = js(capsys, "verify", "center", "--N", "3", "--L", "6")
        assert code == 0
        n0 = [c for c in d["checks"] if c["name"] == "n0"][0]
        assert n0["n0"] == 4

    def test_rtt_37(self, capsys):
        code, d = js(capsys, "verify", "rtt", "--N", "3", "--L", "7")
        assert code == 0 and d["status"] == "PASS"

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "bogus", "--N", "2", "--L", "6")
        assert code == 2 and "bogus" in err

    def test_deterministic(self, capsys):
        argv = ["verify", "pattern", "--N", "3", "--L", "7", "--seed", "3", "--samples", "4"]
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b


class TestSimulate:
    def test_csv_and_report(self, capsys, tmp_path):
        p = tmp_path / "traj.csv"
        code, d = js(capsys, "simulate", "--N", "2", "--L", "6", "--t-end", "0.5", "--dt", "0.01", "--out", str(p))
        assert code == 0
        header, data = read_trajectory_csv(p)
        assert header == ["t"] + [f"V_{n}" for n in range(1, 7)] + ["H_1", "H_2"]
        assert data.shape == (51, 9)
        assert np.isclose(data[-1, 0], 0.5)
        assert d["status"] == "PASS"

    def test_init_file(self, capsys, tmp_path):
        init = tmp_path / "v.json"
        init.write_text(json.dumps({"V": ["1.0", "1.0", "1.0", "1.0"]}))
        p = tmp_path / "traj.csv"
        code, _ = js(capsys, "simulate", "--N", "2", "--L", "4", "--t-end", "0.1", "--dt", "0.01", "--init", str(init), "--out", str(p))
        assert code == 0
        _, data = read_trajectory_csv(p)
        assert np.allclose(data[:, 1:5], 1.0)

    def test_init_wrong_length(self, capsys, tmp_path):
        init = tmp_path / "v.json"
        init.write_text(json.dumps({"V": [1, 2, 3]}))
        code, _, _ = run(capsys, "simulate", "--N", "2", "--L", "4", "--t-end", "0.1", "--init", str(init))
        assert code == 2

    def test_flow_abort(self, capsys, tmp_path):
        init = tmp_path / "v.json"
        init.write_text(json.dumps({"V": [1, 1e-13, 1, 1]}))
        code, _, _ = run(capsys, "simulate", "--N", "2", "--L", "4", "--t-end", "0.1", "--init", str(init))
        assert code == 1


class TestDivisor:
    def test_short_run(self, capsys, tmp_path):
        p = tmp_path / "div.csv"
        code, d = js(capsys, "divisor", "--N", "2", "--L", "5", "--t-end", "0.3", "--dt", "0.001", "--flow", "all", "--out", str(p))
        assert code == 0 and d["status"] == "PASS"
        header = p.read_text().splitlines()[0]
        assert header.startswith("t,")


class TestTable:
    def test_n2(self, capsys):
        code, out, _ = run(capsys, "table", "--N", "2", "--Lmin", "3", "--Lmax", "8")
        assert code == 0
        assert out.splitlines() == ["L,g", "3,1", "4,1", "5,2", "6,2", "7,3", "8,3"]

    def test_n3(self, capsys):
        code, out, _ = run(capsys, "table", "--N", "3", "--Lmin", "5", "--Lmax", "10")
        assert out.splitlines()[1:] == ["5,2", "6,1", "7,3", "8,3", "9,3", "10,4"]

    def test_csv_file(self, capsys, tmp_path):
        p = tmp_path / "t.csv"
        run(capsys, "table", "--N", "2", "--Lmin", "3", "--Lmax", "4", "--out", str(p))
        assert p.read_text() == "L,g\n3,1\n4,1\n"


class TestCertify:
    def test_39(self, capsys):
        code, d = js(capsys, "certify", "--N", "3", "--L", "9")
        assert code == 0 and d["status"] == "PASS"
        assert d["g"] == d["n_H"] == 3 and d["n0"] == 3

    def test_out_of_scope(self, capsys):
        code, _, _ = run(capsys, "certify", "--N", "4", "--L", "10")
        assert code == 2

    def test_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "certify", "--N", "2", "--L", "7", "--out", str(a))
        run(capsys, "certify", "--N", "2", "--L", "7", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()
