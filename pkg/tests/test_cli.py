import json

import pytest

from caysum.cli import CSV_VERSION, main


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


@pytest.fixture
def files(tmp_path):
    return {
        "q8": _write(tmp_path, "q8.json", {"abelian": [4], "b_squared": [2]}),
        "h_a2": _write(tmp_path, "h_a2.json", {"kind": "A", "gens": [[2]]}),
        "h_a": _write(tmp_path, "h_a.json", {"kind": "A", "gens": [[1]]}),
        "h_b": _write(tmp_path, "h_b.json", {"kind": "zb", "H_gens": [[2]], "z": [0]}),
        "empty": _write(tmp_path, "empty.json", {"elements": []}),
        "bad": _write(tmp_path, "bad.json", "{"),
        "dic16": _write(tmp_path, "dic16.json", {"abelian": [8], "b_squared": [4]}),
        "big": _write(tmp_path, "big.json", {"abelian": [2, 2, 2, 2, 2, 2, 2], "b_squared": [1, 0, 0, 0, 0, 0, 0]}),
        "dir": tmp_path,
    }


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_feasible(files, capsys):
    code, out, _ = _run(capsys, ["feasible", files["q8"], "--subgroup", files["h_a2"]])
    assert code == 0 and json.loads(out)["pairs"] == [[0, 2]]
    code, out, _ = _run(capsys, ["feasible", files["q8"]])
    assert code == 0 and len(json.loads(out)["regions"]) == 6


def test_construct_then_verify(files, capsys):
    target = str(files["dir"] / "S.json")
    code, out, _ = _run(
        capsys, ["construct", files["q8"], "--subgroup", files["h_a"], "--alpha", "2", "--beta", "4", "-o", target]
    )
    assert code == 0 and len(json.loads(out)["S"]["elements"]) == 6
    code, out, _ = _run(capsys, ["verify", files["q8"], "--subgroup", files["h_a"], "--set", target])
    doc = json.loads(out)
    assert code == 0 and doc["profile"] == [2, 4] and doc["in_region"]


def test_verify_accepts_witness_document(files, capsys):
    _, out, _ = _run(capsys, ["construct", files["q8"], "--subgroup", files["h_b"], "--alpha", "2", "--beta", "2"])
    witness = _write(files["dir"], "w.json", out)
    code, out, _ = _run(capsys, ["verify", files["q8"], "--subgroup", files["h_b"], "--set", witness])
    assert code == 0 and json.loads(out)["profile"] == [2, 2]


def test_verify_empty(files, capsys):
    code, out, _ = _run(capsys, ["verify", files["q8"], "--subgroup", files["h_a2"], "--set", files["empty"]])
    doc = json.loads(out)
    assert code == 0 and doc["profile"] == [0, 0] and doc["note"] == "excluded by theorems"


def test_verify_invalid_set(files, capsys):
    lone = _write(files["dir"], "lone.json", {"elements": [[[1], 0]]})
    code, out, _ = _run(capsys, ["verify", files["q8"], "--subgroup", files["h_a"], "--set", lone])
    assert code == 1 and not json.loads(out)["normal"]


def test_exit_codes(files, capsys):
    assert _run(capsys, ["info", files["bad"]])[0] == 2
    assert _run(capsys, ["info", str(files["dir"] / "missing.json")])[0] == 2
    code, out, err = _run(capsys, ["construct", files["q8"], "--subgroup", files["h_a"], "--alpha", "1", "--beta", "4"])
    assert code == 3 and out == "" and "infeasible" in err
    assert _run(capsys, ["subgroups", files["big"]])[0] == 4
    assert _run(capsys, ["crosscheck", files["q8"], "--max-classes", "2"])[0] == 4


def test_info_and_subgroups(files, capsys):
    code, out, _ = _run(capsys, ["info", files["q8"]])
    doc = json.loads(out)
    assert code == 0 and doc["squares"] == [[[0], 0], [[2], 0]] and len(doc["classes"]) == 5
    code, out, _ = _run(capsys, ["subgroups", files["q8"]])
    subs = json.loads(out)["subgroups"]
    assert code == 0 and len(subs) == 6
    assert {s["case"] for s in subs} == {"A:r=0", "zb:m>l,r=0", "zb:m=l"}


def test_crosscheck_outputs(files, capsys):
    csv_path = str(files["dir"] / "out.csv")
    code, out, err = _run(capsys, ["crosscheck", files["q8"], "--csv", csv_path, "--no-timing"])
    assert code == 1  # literal closed form over-predicts for K = G
    assert "mismatch" in err
    report = json.loads(out)
    assert [r["composed_equal"] for r in report["rows"]] == [True] * 6
    lines = open(csv_path).read().splitlines()
    assert lines[0] == CSV_VERSION
    assert lines[1] == "group,subgroup,case_label,n_predicted,n_achieved,equal,seconds"
    assert len(lines) == 8


def test_byte_identical_output(files, capsys):
    first = _run(capsys, ["crosscheck", files["dic16"], "--no-timing"])[1]
    second = _run(capsys, ["crosscheck", files["dic16"], "--no-timing"])[1]
    assert first == second
