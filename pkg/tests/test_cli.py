import json

from scrollres.cli import main


def run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, out


def test_betti_text_output(capsys):
    rc, out = run(capsys, ["betti", "--scroll", "3,3", "--max", "4"])
    assert rc == 0
    assert out.strip() == "1 6 21 64 192"


def test_betti_json_strings(capsys):
    rc, out = run(capsys, ["betti", "--scroll", "3,3", "--max", "3",
                           "--format", "json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["betti"] == ["1", "6", "21", "64"]


def test_faces_output(capsys):
    rc, out = run(capsys, ["faces", "--scroll", "4,3"])
    assert rc == 0
    assert out.split() == ["1", "7", "11", "5"]


def test_hilbert_output(capsys):
    rc, out = run(capsys, ["hilbert", "--scroll", "3,3", "--terms", "4"])
    assert rc == 0
    assert out.split() == ["1", "6", "15", "28", "45"]
    rc, out = run(capsys, ["hilbert", "--scroll", "3,3", "--terms", "4",
                           "--format", "json"])
    obj = json.loads(out)
    assert obj["hilbert"]["num"] == ["1", "3"]
    assert obj["f_vector"] == ["1", "6", "9", "4"]


def test_resolve_json_shape_chain(capsys):
    rc, out = run(capsys, ["resolve", "--scroll", "2,2", "--steps", "3"])
    assert rc == 0
    obj = json.loads(out)
    shapes = [(s["rows"], s["cols"]) for s in obj["steps"]]
    assert shapes == [(1, 4), (4, 7), (7, 8)]
    assert obj["ranks"] == ["1", "4", "7", "8"]


def test_resolve_text_format(capsys):
    rc, out = run(capsys, ["resolve", "--scroll", "2,2", "--steps", "1",
                           "--format", "text"])
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "# step 1: 1 x 4"
    assert lines[1] == "0 0 x1"


def test_resolve_requires_two_blocks(capsys):
    rc = main(["resolve", "--scroll", "2,2,2"])
    assert rc == 2


def test_bad_scroll_is_usage_error(capsys):
    assert main(["betti", "--scroll", "1,3"]) == 2
    assert main(["betti", "--scroll", "oops"]) == 2
    assert main(["frobnicate", "--scroll", "3,3"]) == 2


def test_verify_passes_and_reports(capsys):
    rc, out = run(capsys, ["verify", "--scroll", "3,3", "--steps", "3",
                           "--checks", "complex,minimal,exact",
                           "--modulus", "32003", "--trials", "3",
                           "--seed", "42"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["seed"] == 42
    names = [c["name"] for c in obj["checks"]]
    assert "complex" in names and "minimal" in names and "exact@1" in names
    assert all(c["verdict"] == "pass" for c in obj["checks"])


def test_verify_detects_injected_fault(capsys):
    for kind in ("sign_flip", "variable_swap", "unit_insert"):
        rc, out = run(capsys, ["verify", "--scroll", "3,3", "--steps", "4",
                               "--checks", "complex,minimal,exact",
                               "--seed", "7", "--inject-fault", kind])
        assert rc == 1, kind
        obj = json.loads(out)
        assert any(c["verdict"] == "fail" for c in obj["checks"])


def test_verify_unknown_check_is_usage_error(capsys):
    rc = main(["verify", "--scroll", "3,3", "--checks", "complex,nope"])
    capsys.readouterr()
    assert rc == 2


def test_oracle_compare(capsys):
    rc, out = run(capsys, ["oracle", "--scroll", "2,2", "--imax", "3",
                           "--modulus", "32003", "--compare"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["ok"] is True
    assert obj["diagonal"] == ["1", "4", "7", "8"]
    entries = obj["betti_table"]["entries"]
    assert {"i": 1, "j": 1, "value": "4"} in entries


def test_oracle_plain_table(capsys):
    rc, out = run(capsys, ["oracle", "--scroll", "2,3", "--imax", "2",
                           "--modulus", "101"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["modulus"] == 101


def test_json_output_deterministic(capsys):
    argv = ["verify", "--scroll", "2,2", "--steps", "3",
            "--checks", "complex,exact", "--seed", "11", "--trials", "2"]
    rc1, out1 = run(capsys, argv)
    rc2, out2 = run(capsys, argv)
    assert rc1 == rc2 == 0
    assert out1 == out2

    argv = ["resolve", "--scroll", "3,3", "--steps", "3"]
    _, a = run(capsys, argv)
    _, b = run(capsys, argv)
    assert a == b


def test_out_file_writing(tmp_path, capsys):
    path = tmp_path / "res.json"
    rc = main(["resolve", "--scroll", "2,2", "--steps", "2", "--out", str(path)])
    capsys.readouterr()
    assert rc == 0
    obj = json.loads(path.read_text())
    assert obj["spec"] == {"blocks": [2, 2]}
