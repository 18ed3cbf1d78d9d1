import json

from chevcr.cli import main, parse_field_spec


def test_field_spec():
    assert parse_field_spec("F4(t)") == ("F4", 4, True)
    assert parse_field_spec("G2/F3(t)") == ("G2", 3, True)
    assert parse_field_spec("F4/F16") == ("F4", 16, False)


def test_verify_paper_json(capsys):
    assert main(["verify-paper", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert all(set(r) == {"scenario", "claim", "paper_ref", "status", "witness"} for r in data)
    assert all(r["status"] == "pass" for r in data)


def test_classify(capsys):
    assert main(["classify", "2,4,3,2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["U"] == list(range(10, 25))


def test_limit(capsys):
    assert main(["limit", "2,4,3,2", "e(1,1)*e(3,1)*e(14,t^2)"]) == 0
    assert capsys.readouterr().out.strip() == "e(1, 1) * e(3, 1)"


def test_collect_and_conjugate(capsys):
    assert main(["collect", "e(21,x)*e(1,1)"]) == 0
    assert capsys.readouterr().out.strip() == "e(1, 1) * e(14, x^2) * e(21, x) * e(22, x)"
    assert main(["conjugate", "e(10,x10)*e(13,x13)*e(16,x16)*e(17,x17)*e(20,x20)*e(21,x21)*e(24,x24)",
                 "e(1,1)*e(3,1)", "--cochar", "2,4,3,2"]) == 0
    assert capsys.readouterr().out.strip() == \
        "e(1, 1) * e(3, 1) * e(11, x10) * e(14, x21^2) * e(18, x17) * e(22, x20+x21)"


def test_obstruct(capsys):
    assert main(["obstruct", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["solvable_K"] is True and data["solvable_k"] is False
    assert main(["obstruct", "--a", "t^4", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["solvable_k"] is True
    assert main(["obstruct", "--sigma", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["solvable_k"] is False


def test_weilres_demo(capsys):
    assert main(["weilres", "--p", "2", "--s", "1", "--demo", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["theta_matrix"] == [["0", "t^2"], ["1", "0"]]
    assert data["common_eigenvector_K"] == ["t", "1"] and data["common_eigenvector_k"] is None


def test_rootsys(capsys):
    assert main(["rootsys", "F4", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["type"] == "F4"
    assert sum(1 for r in data["roots"] if min(r["coeffs"]) >= 0) == 24


def test_run_script_exit_codes(tmp_path, capsys):
    ok = tmp_path / "ok.chev"
    ok.write_text("let w = e(1,1)*e(3,1)\nassert limit(cochar(2,4,3,2), w*e(14,t^2)) == w\n")
    assert main(["run", str(ok)]) == 0
    bad = tmp_path / "bad.chev"
    bad.write_text("assert is_k(t)\n")
    assert main(["run", str(bad)]) == 1
    syn = tmp_path / "syn.chev"
    syn.write_text("e(1,\n")
    assert main(["run", str(syn), "--json"]) == 2
    assert json.loads(capsys.readouterr().out.splitlines()[-1])["error"] == "syntax"
    assert main(["run", str(tmp_path / "missing.chev")]) == 2


def test_usage_errors():
    assert main([]) == 2
    assert main(["classify", "1,2"]) == 2
    assert main(["collect", "e(-13,1)*e(13,1)"]) == 2


def test_env_field(monkeypatch, capsys):
    monkeypatch.setenv("CHEV_FIELD", "G2/F3(t)")
    assert main(["collect", "e(2,1)*e(1,1)"]) == 0
    assert capsys.readouterr().out.strip().startswith("e(1, 1)")
    monkeypatch.setenv("CHEV_FIELD", "nonsense")
    assert main(["collect", "e(1,1)"]) == 2


def test_repl(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("let w = e(1, t)\ncollect(w * w)\nassert is_k(t^2)\n"))
    assert main(["repl"]) == 0
    out = capsys.readouterr().out
    assert "e(1, 0)" not in out and "ok" in out
