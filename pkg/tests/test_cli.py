import json

import pytest

from sigmahull.cli import main


def run(argv, capsys):
    rc = main([str(a) for a in argv])
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.fixture
def fixtures(tmp_path, capsys):
    paths = {}
    for name, argv in {
        "code": ["random", "code", "--p", 3, "--e", 2, "--n", 6, "--k", 3, "--seed", 1],
        "code2": ["random", "code", "--p", 3, "--e", 2, "--n", 6, "--k", 4, "--seed", 2],
        "sigma": ["random", "sigma", "--p", 3, "--e", 2, "--n", 6, "--seed", 3],
        "mxp": ["random", "mxp", "--p", 3, "--e", 2, "--n", 3, "--k", 2, "--seed", 4],
        "grs": ["random", "grs", "--p", 3, "--e", 2, "--n", 5, "--k", 2],
    }.items():
        paths[name] = tmp_path / f"{name}.json"
        rc, _, _ = run(argv + ["--out", paths[name]], capsys)
        assert rc == 0
    return paths


def test_field(capsys):
    rc, out, _ = run(["field", "--p", 3, "--e", 4], capsys)
    assert rc == 0 and "x^4 + x + 2" in out
    rc, _, err = run(["field", "--p", 4], capsys)
    assert rc == 2 and "error" in err
    rc, _, _ = run(["field", "--p", 3, "--e", 2, "--modulus", 2, 0], capsys)
    assert rc == 2


def test_hull_report(fixtures, tmp_path, capsys):
    rep = tmp_path / "r.json"
    rc, out, _ = run(["hull", fixtures["code"], "--sigma", fixtures["sigma"], "--out", rep, "--basis"], capsys)
    assert rc == 0 and "oracle" in out
    d = json.loads(rep.read_text())
    assert set(d) >= {"command", "args", "inputs_digest", "inputs", "results", "seconds", "version"}
    assert d["results"]["consistent"] and "basis" in d["results"]
    rc, out, _ = run(["hull", fixtures["code"], "--galois", 1], capsys)
    assert rc == 0 and "parity" in out
    rc, _, _ = run(["hull", fixtures["code"], "--galois", 5], capsys)
    assert rc == 2


def test_intersect(fixtures, capsys):
    rc, out, _ = run(["intersect", fixtures["code"], fixtures["code2"], "--sigma", fixtures["sigma"]], capsys)
    assert rc == 0 and "form 1" in out and "form 2" in out
    rc, out, _ = run(["intersect", fixtures["code"], fixtures["code2"], "--which", 2], capsys)
    assert rc == 0 and "form 1" not in out


def test_mxp(fixtures, capsys):
    for action in ("build", "dual", "hull"):
        rc, out, err = run(["mxp", action, fixtures["mxp"]], capsys)
        assert rc == 0, err


def test_family_single_and_sweep(tmp_path, capsys):
    rep = tmp_path / "f.json"
    rc, out, _ = run(["family", "--family", "norm", "--p", 3, "--e", 4, "--l", 3, "--t", 1,
                      "--k", 2, "--h", 1, "--out", rep], capsys)
    assert rc == 0
    d = json.loads(rep.read_text())
    (res,) = d["results"]
    assert res["hull"]["oracle_dim"] == 1 and res["length"] == 40
    rc, out, _ = run(["family", "--family", "additive", "--variant", "n+1", "--p", 3, "--e", 4,
                      "--l", 3, "--a", 1, "--w", 3, "--t", 1, "--sweep"], capsys)
    assert rc == 0 and "instance(s) constructed" in out


def test_family_precondition_failure(capsys):
    rc, out, err = run(["family", "--family", "norm", "--p", 3, "--e", 4, "--l", 3, "--t", 1,
                        "--k", 3, "--h", 1], capsys)
    assert rc == 2
    assert "[FAIL] 1 <= k <= bound" in out + err
    rc, _, _ = run(["family", "--family", "cyclic", "--p", 3, "--e", 4, "--l", 3, "--k", 1, "--h", 0], capsys)
    assert rc == 2


def test_family_tables(capsys):
    rc, out, _ = run(["family", "--table", "coset", "--check-arithmetic"], capsys)
    assert rc == 0 and "ok" in out


def test_selftest(capsys, tmp_path):
    rc, out, _ = run(["selftest", "--list"], capsys)
    assert rc == 0 and "GRS membership" in out
    rep = tmp_path / "s.json"
    rc, out, _ = run(["selftest", "--only", "power", "subfield", "--out", rep], capsys)
    assert rc == 0 and out.count("PASS") == 2
    assert all(r["failures"] == 0 for r in json.loads(rep.read_text())["results"])
    rc, _, _ = run(["selftest", "--only", "nothing-like-this"], capsys)
    assert rc == 2


def test_missing_and_malformed_inputs(tmp_path, capsys):
    rc, _, _ = run(["hull", tmp_path / "absent.json"], capsys)
    assert rc == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc, _, _ = run(["hull", bad], capsys)
    assert rc == 2
