import json

import pytest

from bhcodes.cli import main


@pytest.fixture
def d1(tmp_path):
    p = tmp_path / "d1.json"
    p.write_text(json.dumps({"table_id": "D1", "variant": "general", "ring": "F4U",
                             "lambda_hex": "3", "rA": "1B", "rB": "7C", "rC": "6D", "rD": "45",
                             "slot_order": "ACBD"}))
    return p


def test_build_verify_analyze(d1, tmp_path, capsys):
    out = tmp_path / "d1.code.json"
    assert main(["build", str(d1), "-o", str(out)]) == 0
    assert main(["verify", str(out)]) == 0
    assert main(["analyze", str(out)]) == 0
    text = capsys.readouterr().out
    assert "[64,32,12] Type I, W64_2, beta=4" in text
    data = json.loads(out.read_text())
    data["profile"]["beta"] = 5
    out.write_text(json.dumps(data))
    assert main(["verify", str(out)]) == 1


def test_build_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"variant": "general", "ring": "F4U", "rA": "1Z", "rB": "7C",
                               "rC": "6D", "rD": "45"}))
    assert main(["build", str(bad)]) == 2
    cond = tmp_path / "cond.json"
    cond.write_text(json.dumps({"variant": "general", "ring": "F2", "rA": "100", "rB": "100",
                                "rC": "100", "rD": "100"}))
    assert main(["build", str(cond)]) == 1
    assert "AA^T + BB^T + CC^T + DD^T" in capsys.readouterr().err
    assert main(["build", str(tmp_path / "missing.json")]) == 2


def test_neighbor_and_extend(d1, tmp_path):
    out = tmp_path / "c.json"
    assert main(["build", str(d1), "-o", str(out), "--no-profile"]) == 0
    assert main(["neighbor", str(out), "--x", "0110", "-o", str(tmp_path / "n.json")]) == 0
    assert main(["neighbor", str(out), "--x", "1110", "-o", str(tmp_path / "n.json")]) == 2
    X = "1131113u3u0110103uuuuu03u03u1031"
    assert main(["extend", str(d1), "--X", X, "-o", str(tmp_path / "e.json")]) == 0
    assert json.loads((tmp_path / "e.json").read_text())["length"] == 68
    assert main(["verify", str(tmp_path / "e.json")]) == 0


def test_analyze_design_needs_seed(tmp_path):
    rec = tmp_path / "r.json"
    rec.write_text(json.dumps({"variant": "symmetric", "ring": "F2", "rA": "11011", "rB": "01010",
                               "rC": "101100101", "rD": "110001000"}))
    out = tmp_path / "c.json"
    assert main(["build", str(rec), "-o", str(out), "--no-profile"]) == 0
    assert main(["analyze", str(out), "--design", "--design-weight", "12"]) == 2


def test_search_and_reproduce_hits(tmp_path, capsys):
    log = tmp_path / "hits.jsonl"
    assert main(["search", "--seed", "5", "--ring", "F2", "--variant", "general", "--n", "3",
                 "--budget", "3000", "--min-distance", "4", "-o", str(log)]) == 0
    assert log.read_text().strip()
    assert main(["reproduce", str(log)]) == 0
    with pytest.raises(SystemExit):
        main(["search", "--ring", "F2"])


def test_reproduce_tables(capsys):
    assert main(["reproduce", "table3"]) == 0
    assert main(["reproduce", "example4.1"]) == 0
    assert "PASS example4_1:C72_7" in capsys.readouterr().out
    assert main(["reproduce", "table2"]) == 1
    assert main(["reproduce", "nosuch"]) == 2
