import json

import pytest

from projclass.cli import main, oracle_check
from projclass.errors import OracleBoundsError


@pytest.fixture
def tri_file(tmp_path):
    p = tmp_path / "triangular.json"
    p.write_text(
        '{"prefix": [], "tail": {"kind": "disjoint_blocks", "a": 1, "b": 0, "start": 1}}'
    )
    return str(p)


@pytest.fixture
def two_ones_file(tmp_path):
    p = tmp_path / "two_ones.json"
    p.write_text('{"prefix": [[1], [1]], "tail": {"kind": "none"}}')
    return str(p)


@pytest.fixture
def constant_file(tmp_path):
    p = tmp_path / "constant.json"
    p.write_text('{"prefix": [], "tail": {"kind": "constant", "set": [1]}}')
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_triangular(capsys, tri_file):
    code, out, _ = run(capsys, "classify", "--family", tri_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["label"] == "non_full_stably_finite"
    assert doc["N_table"] == {"1": 1, "2": 2, "3": 4, "4": 7, "5": 11, "6": 16}
    assert doc["k"] == 0 and doc["F0"] == []


def test_classify_constant(capsys, constant_file):
    code, out, _ = run(capsys, "classify", "--family", constant_file)
    doc = json.loads(out)
    assert code == 0
    assert doc["label"] == "full_stably_properly_infinite"
    assert doc["witness_m"] == 1
    surpluses = [s for _, s in doc["surplus_samples"]]
    assert surpluses == sorted(set(surpluses))


def test_analyze_two_ones(capsys, two_ones_file):
    code, out, _ = run(capsys, "analyze", "--family", two_ones_file, "--m", "1", "--n", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["decision"] is True
    assert doc["witness_F"] == [1, 2]


def test_analyze_rejects_bad_multiplicity(capsys, tri_file):
    code, _, err = run(capsys, "analyze", "--family", tri_file, "--m", "0", "--n", "1")
    assert code == 2
    assert "m and n" in err


def test_nbound(capsys, tri_file):
    code, out, _ = run(capsys, "nbound", "--family", tri_file, "--m", "4")
    doc = json.loads(out)
    assert code == 0
    assert doc["N"] == 7
    assert doc["attained_surplus"] == 6
    assert len(doc["witness_F"]) in (3, 4)


def test_euler_square_is_zero(capsys):
    code, out, _ = run(capsys, "euler", "--bundles", "[[1],[1]]")
    doc = json.loads(out)
    assert code == 0
    assert doc == {"terms": [], "zero": True}


def test_euler_big_coefficients_are_strings(capsys):
    code, out, _ = run(capsys, "euler", "--bundles", "[[1,2],[1,2]]")
    doc = json.loads(out)
    assert code == 0
    assert doc["terms"] == [{"coeff": "2", "monomial": [1, 2]}]


def test_euler_accepts_coefficient_maps(capsys):
    code, out, _ = run(capsys, "euler", "--bundles", '[{"1": 1}, {"1": -1}]')
    doc = json.loads(out)
    assert code == 0 and doc["zero"] is True


def test_euler_rejects_garbage(capsys):
    code, _, err = run(capsys, "euler", "--bundles", '[["x"]]')
    assert code == 2 and "positive integers" in err


def test_endo_sim_report_shape(capsys, tri_file):
    code, out, _ = run(
        capsys, "endo-sim", "--family", tri_file,
        "--depth", "2", "--window", "1", "--prefix", "3",
    )
    doc = json.loads(out)
    assert code == 0
    assert doc == {
        "entries": 27,
        "transversal_ok": True,
        "hall_ok": True,
        "k": 0,
        "F0": [],
    }


def test_endo_sim_assignment_dump(capsys, tri_file):
    code, out, _ = run(
        capsys, "endo-sim", "--family", tri_file,
        "--depth", "1", "--window", "0", "--prefix", "1", "--dump-assignment",
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["assignment"] == [
        {"path": [0], "source": 1, "term": ["nu", 0, ["base", 1]]}
    ]


def test_endo_sim_k_flag(capsys, tri_file):
    code, _, _ = run(
        capsys, "endo-sim", "--family", tri_file,
        "--depth", "1", "--window", "1", "--prefix", "2", "--k", "0",
    )
    assert code == 0
    code, _, err = run(
        capsys, "endo-sim", "--family", tri_file,
        "--depth", "1", "--window", "1", "--prefix", "2", "--k", "5",
    )
    assert code == 2 and "disagrees" in err
    code, _, err = run(
        capsys, "endo-sim", "--family", tri_file,
        "--depth", "1", "--window", "1", "--prefix", "2", "--k", "lots",
    )
    assert code == 2 and "auto" in err


def test_endo_sim_entry_cap_env(capsys, tri_file, monkeypatch):
    monkeypatch.setenv("PROJCLASS_ENTRY_CAP", "10")
    code, _, err = run(
        capsys, "endo-sim", "--family", tri_file,
        "--depth", "2", "--window", "1", "--prefix", "3",
    )
    assert code == 1
    assert "window too large" in err


def test_endo_sim_full_family(capsys, constant_file):
    code, _, err = run(
        capsys, "endo-sim", "--family", constant_file,
        "--depth", "1", "--window", "1", "--prefix", "2",
    )
    assert code == 2 and "full" in err


def test_malformed_json_reports_position(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"prefix": [')
    code, _, err = run(capsys, "classify", "--family", str(p))
    assert code == 2
    assert "line" in err and "column" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "classify", "--family", "/nonexistent/f.json")
    assert code == 2


def test_unknown_tail_kind(capsys, tmp_path):
    p = tmp_path / "odd.json"
    p.write_text('{"prefix": [], "tail": {"kind": "fibonacci"}}')
    code, _, err = run(capsys, "classify", "--family", str(p))
    assert code == 2 and "tail kind" in err


def test_text_format(capsys, tri_file):
    code, out, _ = run(capsys, "classify", "--family", tri_file, "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 'label: "non_full_stably_finite"'
    assert any(line.strip().startswith("1: 1") for line in lines)


def test_output_is_deterministic(capsys, tri_file):
    _, first, _ = run(capsys, "classify", "--family", tri_file)
    _, second, _ = run(capsys, "classify", "--family", tri_file)
    assert first == second


def test_oracle_check_subcommand(capsys):
    code, out, _ = run(
        capsys, "oracle-check", "--max-sets", "2", "--max-ground", "2",
        "--random", "25", "--seed", "3",
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["exhaustive_cases"] == 4 + 16
    assert doc["disagreements"] == 0


def test_oracle_check_bounds_guard(capsys):
    code, _, err = run(capsys, "oracle-check", "--max-sets", "8")
    assert code == 2
    assert "bounds too large" in err
    with pytest.raises(OracleBoundsError):
        oracle_check(4, 5, 0, 0)


def test_oracle_check_function_counts():
    doc = oracle_check(3, 3, 10, 1)
    assert doc["exhaustive_cases"] == 8 + 64 + 512
    assert doc["disagreements"] == 0
