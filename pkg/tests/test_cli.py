from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from evpos import cli, io

GOLDEN = Path(__file__).parent / "golden"

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


def rounded(obj, places=9):
    # goldens compare schema and values, not the last bits of LAPACK roundoff
    if isinstance(obj, dict):
        return {k: rounded(v, places) for k, v in obj.items()}
    if isinstance(obj, list):
        return [rounded(v, places) for v in obj]
    if isinstance(obj, float):
        return round(obj, places) + 0.0
    return obj


def write(tmp_path, name, M):
    path = tmp_path / name
    io.save_matrix(path, np.asarray(M, dtype=complex))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestMatrixFile:
    @given(arrays(np.float64, st.tuples(st.integers(1, 4), st.integers(1, 4)), elements=finite),
           arrays(np.float64, (4, 4), elements=finite))
    def test_round_trip(self, re, im):
        M = re + 1j * im[: re.shape[0], : re.shape[1]]
        back = io.parse_matrix(json.loads(io.dumps_matrix(M))).to_array()
        assert np.array_equal(back.view(np.float64), M.view(np.float64))

    def test_format(self):
        doc = json.loads(io.dumps_matrix([[1, 2j]]))
        assert doc == {"rows": 1, "cols": 2, "entries": [[[1, 0], [0, 2]]]}

    @pytest.mark.parametrize(
        "doc, where",
        [
            ({"rows": 1, "cols": 1}, "entries"),
            ({"rows": 2, "cols": 1, "entries": [[[0, 0]]]}, "2 rows"),
            ({"rows": 1, "cols": 1, "entries": [[[0]]]}, r"entries\[0\]\[0\]"),
            ({"rows": 1, "cols": 1, "entries": [[["a", 0]]]}, r"entries\[0\]\[0\]"),
            ({"rows": 0, "cols": 1, "entries": []}, "rows"),
        ],
    )
    def test_parse_errors_name_location(self, doc, where):
        with pytest.raises(io.MatrixFileError, match=where):
            io.parse_matrix(doc)


class TestAnalyze:
    def test_rotation(self, tmp_path, capsys):
        code, out, _ = run(capsys, "analyze", write(tmp_path, "r.json", [[0, -1], [1, 0]]), "--json")
        doc = json.loads(out)
        assert code == 0
        assert abs(doc["spectral_bound"]) < 1e-12
        assert sorted(z[1] for z in doc["peripheral_set"]) == pytest.approx([-1, 1])

    def test_zero(self, tmp_path, capsys):
        code, out, _ = run(capsys, "analyze", write(tmp_path, "z.json", np.zeros((2, 2))), "--json")
        doc = json.loads(out)
        assert doc["spectral_bound"] == 0 and len(doc["eigenvalues"]) == 1

    def test_jordan_text(self, tmp_path, capsys):
        code, out, _ = run(capsys, "analyze", write(tmp_path, "j.json", [[0, 1], [0, 0]]))
        assert code == 0
        row = [line for line in out.splitlines() if line.startswith("0 ")][0]
        assert row.split()[-1] == "2"

    def test_parse_error_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{ not json")
        code, _, err = run(capsys, "analyze", str(bad))
        assert code == 2 and "line 1 column 3" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run(capsys, "analyze", str(tmp_path / "missing.json"))
        assert code == 2

    def test_non_square(self, tmp_path, capsys):
        code, _, _ = run(capsys, "analyze", write(tmp_path, "ns.json", np.zeros((2, 3))))
        assert code == 2


class TestPositivity:
    def test_metzler(self, tmp_path, capsys):
        code, out, _ = run(capsys, "positivity", write(tmp_path, "m.json", [[-1, 1], [1, -1]]), "--mode", "semigroup")
        assert code == 0 and "positive-from-start" in out

    def test_rotation(self, tmp_path, capsys):
        code, out, _ = run(capsys, "positivity", write(tmp_path, "r.json", [[0, -1], [1, 0]]), "--json")
        assert json.loads(out)["verdict"] == "not-detected"

    def test_generated(self, tmp_path, capsys):
        out_path = str(tmp_path / "evpos3.json")
        assert run(capsys, "generate", "--family", "evpos-semigroup", "--dim", "3", "--seed", "1", "--out", out_path)[0] == 0
        code, out, _ = run(capsys, "positivity", out_path, "--json")
        doc = json.loads(out)
        assert doc["verdict"] == "certified-strictly-eventually-positive" and doc["witness"] > 0

    def test_overflow_exit_3(self, tmp_path, capsys):
        code, _, err = run(capsys, "positivity", write(tmp_path, "big.json", np.diag([40.0, 0])), "--horizon", "50")
        assert code == 3 and "rescaled" in err


class TestConverge:
    @pytest.mark.parametrize("mode, expected", [("strong", False), ("mean-ergodic", True), ("balancing", False)])
    def test_rotation(self, tmp_path, capsys, mode, expected):
        code, out, _ = run(capsys, "converge", write(tmp_path, "r.json", [[0, -1], [1, 0]]), "--mode", mode, "--json")
        assert code == 0 and json.loads(out)["converges"] is expected


class TestCheck:
    def test_generated_lemma53(self, tmp_path, capsys):
        path = str(tmp_path / "evpos3.json")
        run(capsys, "generate", "--family", "evpos-semigroup", "--dim", "3", "--seed", "3", "--out", path)
        code, out, _ = run(capsys, "check", "lem-5.3", path)
        assert code == 0 and "lem-5.3: confirmed" in out

    def test_jordan_power(self, tmp_path, capsys):
        code, out, _ = run(capsys, "check", "thm-4.1", write(tmp_path, "jp.json", [[1, 1], [0, 1]]))
        assert code == 0 and "hypotheses-not-met" in out

    def test_nilpotent_thm51(self, tmp_path, capsys):
        code, out, _ = run(capsys, "check", "thm-5.1", write(tmp_path, "n.json", [[0, 1], [0, 0]]), "--json")
        assert code == 0 and json.loads(out)["verdict"] == "confirmed"

    def test_unknown_id(self, tmp_path, capsys):
        code, _, err = run(capsys, "check", "thm-9.9", write(tmp_path, "n.json", [[0.0]]))
        assert code == 2 and "lem-5.3" in err

    def test_lemma42_needs_projection(self, tmp_path, capsys):
        q = write(tmp_path, "q.json", 0.5 * np.ones((2, 2)))
        assert run(capsys, "check", "lem-4.2", q)[0] == 2
        code, out, _ = run(capsys, "check", "lem-4.2", q, "--projection", q)
        assert code == 0 and "confirmed" in out

    def test_sequences_lam(self, tmp_path, capsys):
        code, out, _ = run(capsys, "check", "eq-4.2-sequences", write(tmp_path, "s.json", [[0, 1], [1, 0]]), "--lam", "-1", "--k0", "0")
        assert code == 0 and "confirmed" in out

    def test_violation_exit_4(self, tmp_path, capsys, monkeypatch):
        from evpos import checkers

        def fake(A, cfg=None):
            return checkers._report("lem-5.3", [checkers.Condition("h", True)], [checkers.Condition("c", False)], checkers.CheckConfig())

        monkeypatch.setitem(checkers._SINGLE, "lem-5.3", fake)
        code, out, _ = run(capsys, "check", "lem-5.3", write(tmp_path, "a.json", [[0.0]]))
        assert code == 4 and "VIOLATION" in out

    def test_all_fixed_order_and_golden(self, tmp_path, capsys):
        code, out, _ = run(capsys, "check", "all", write(tmp_path, "r.json", [[0, -1], [1, 0]]), "--json")
        docs = json.loads(out)
        assert code == 0
        assert [d["theorem_id"] for d in docs] == [
            "thm-2.1", "cor-2.2", "thm-3.1", "lem-3.2", "thm-4.1",
            "thm-4.3", "eq-4.2-sequences", "thm-5.1", "thm-5.2", "lem-5.3",
        ]
        golden = json.loads((GOLDEN / "rotation_thm21.json").read_text())
        assert rounded(docs[0]) == rounded(golden)


class TestGenerate:
    def test_fixed_matrix(self, tmp_path, capsys):
        path = tmp_path / "rot.json"
        run(capsys, "generate", "--family", "rotation-counterexample", "--dim", "2", "--out", str(path))
        assert np.array_equal(io.load_matrix(path), [[0, -1], [1, 0]])
        meta = json.loads((tmp_path / "rot.json.meta.json").read_text())
        assert meta["family"] == "rotation-counterexample"

    def test_deterministic_bytes(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for p in (a, b):
            run(capsys, "generate", "--family", "evpos-semigroup", "--dim", "4", "--seed", "7", "--out", str(p))
        assert a.read_bytes() == b.read_bytes()
        assert (tmp_path / "a.json.meta.json").read_bytes() == (tmp_path / "b.json.meta.json").read_bytes()

    def test_round_trip_with_analyze(self, tmp_path, capsys):
        path = tmp_path / "g.json"
        run(capsys, "generate", "--family", "evpos-semigroup", "--dim", "5", "--seed", "2", "--param", "s=0.4", "--out", str(path))
        meta = json.loads((tmp_path / "g.json.meta.json").read_text())
        _, out, _ = run(capsys, "analyze", str(path), "--json")
        assert abs(json.loads(out)["spectral_bound"] - meta["ground_truth"]["spectral_bound"]) < 1e-7

    def test_infeasible(self, tmp_path, capsys):
        code, _, err = run(capsys, "generate", "--family", "evpos-semigroup", "--dim", "3", "--param", "gap=-1", "--out", str(tmp_path / "x.json"))
        assert code == 2 and "gap" in err

    def test_bad_family_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            cli.main(["generate", "--family", "nope", "--dim", "2", "--out", str(tmp_path / "x.json")])
        assert exc.value.code == 2
