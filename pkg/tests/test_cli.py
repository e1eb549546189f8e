import io
import json

import pytest

from hopfforms.cli import census, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def cert(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_theta_trivial_form():
    c = cert("theta", "--L", "trivial:C2", "--N", "C3")
    assert c["verified"] and c["result"]["grouplikes"]["count"] == 3
    assert c["result"]["grouplikes"]["group"] == "C3"
    assert set(c) == {"command", "inputs", "result", "flags", "verified", "example", "tool"}


def test_theta_compute_subcommand_matches_default():
    assert call("theta", "compute", "--L", "trivial:C2", "--N", "C3")[1] == call("theta", "--L", "trivial:C2", "--N", "C3")[1].replace('"command": "theta"', '"command": "theta compute"')


def test_wedderburn_decompose_QQ8():
    c = cert("wedderburn", "decompose", "--algebra", "QQ8")
    assert c["result"]["verdict"] == ["Q", "Q", "Q", "Q", "H(-1,-1) division"]


def test_wedderburn_abss_verdict_is_result():
    c = cert("wedderburn", "abss", "--group", "Q8")
    assert c["result"]["verdict"] is False and c["verified"]
    assert cert("wedderburn", "abss", "--group", "D4")["result"]["verdict"] is True


def test_hilbert_command():
    c = cert("wedderburn", "hilbert", "-1", "-1")
    assert c["result"]["splits"] is False and c["flags"] == {"reciprocity": True}


@pytest.mark.parametrize("argv", [
    ["groups", "make", "--group", "Q8"],
    ["groups", "aut", "--group", "D4"],
    ["groups", "regular", "--group", "C2xC2", "--type", "C4"],
    ["groups", "w", "--group", "C2xC2", "--N", "cycles:(1,3,2,4)"],
    ["etale", "build", "--L", "q8:2"],
    ["etale", "verify", "--L", "biquadratic"],
    ["etale", "fix", "--L", "biquadratic", "--subgroup", "0,1"],
    ["hopf", "dual", "6"],
    ["hopf", "grouplikes", "--algebra", "dual:C4"],
    ["hopf", "kohl", "3", "1"],
    ["theta", "descend", "--E", "biquadratic", "--N", "cycles:(1,3,2,4)"],
    ["descend", "--E", "pure-cubic", "--N", "index:0", "--type", "C6"],
    ["preimage", "--E", "biquadratic", "--N", "cycles:(1,3,2,4)"],
    ["theta", "q8", "--t", "k", "--d", "2"],
])
def test_commands_verify(argv):
    c = cert(*argv)
    assert c["verified"] and all(c["flags"].values())


def test_regular_counts():
    assert len(cert("groups", "regular", "--group", "C2xC2", "--type", "C4")["result"]["subgroups"]) == 3


def test_output_file_mirrors_stdout(tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = call("hopf", "dual", "4", "--output", str(path))
    assert code == 0 and path.read_text() == out


def test_certificate_roundtrip(tmp_path):
    path = tmp_path / "theta.json"
    call("theta", "--L", "trivial:C2", "--N", "C3", "-o", str(path))
    c = cert("hopf", "axioms", "--algebra", str(path))
    assert c["verified"] and all(c["flags"].values())


def test_broken_certificate_exits_1(tmp_path):
    path = tmp_path / "dual.json"
    call("hopf", "dual", "3", "-o", str(path))
    data = json.loads(path.read_text())
    pres = data["result"]["presentation"]
    pres["counit"] = ["0/1"] * len(pres["counit"])
    path.write_text(json.dumps(data))
    code, out, err = call("hopf", "axioms", "--algebra", str(path))
    assert code == 1 and json.loads(out)["verified"] is False and "verification failed" in err


@pytest.mark.parametrize("argv", [
    ["groups", "make", "--group", "X9"],
    ["theta", "--L", "trivial:C2"],
    ["hopf", "dual", "0"],
    ["hopf", "axioms", "--algebra", "/nonexistent/file.json"],
    ["wedderburn", "hilbert", "0", "3"],
    ["census", "--max-order", "9"],
    ["gallery", "--example", "no-such-example"],
    ["hopf", "dual", "3", "--workers", "0"],
    ["frobnicate"],
])
def test_invalid_input_exits_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err


def test_census_rows():
    rows = {r["G"]: r for r in census(8)}
    counts = {g: {t["N"]: t["count"] for t in r["types"]} for g, r in rows.items()}
    assert counts["C2xC2"] == {"C4": 3, "C2xC2": 1}
    assert counts["S3"]["C6"] == 3 and counts["S3"]["S3"] == 2
    assert counts["Q8"]["C8"] == 6
    for s in next(t for t in rows["C2xC2"]["types"] if t["N"] == "C4")["structures"]:
        assert s["W_order"] == 2 and s["surjective"]


def test_census_parallel_matches_serial():
    assert census(6, workers=1) == census(6, workers=2)


def test_workers_env(monkeypatch):
    monkeypatch.setenv("HOPFFORMS_WORKERS", "2")
    assert call("groups", "regular", "--group", "S3")[1] == call("groups", "regular", "--group", "S3", "--workers", "1")[1]


def test_deterministic_output():
    argv = ["wedderburn", "decompose", "--algebra", "QS3", "--seed", "5"]
    assert call(*argv)[1] == call(*argv)[1]


def test_gallery_single_example():
    c = cert("gallery", "--example", "trivial-form-C3")
    assert c["result"]["passed"] == 1 and c["result"]["failed"] == 0
