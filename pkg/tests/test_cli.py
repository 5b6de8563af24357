import json

import pytest

from muaut import cli


@pytest.fixture()
def loop_file(tmp_path):
    path = tmp_path / "loop.json"
    path.write_text(json.dumps(
        {"props": ["p", "q"], "states": 1, "edges": [[0, 0]], "colors": {}, "init": 0}))
    return str(path)


def test_mu_eval(capsys, loop_file):
    code = cli.main(["mu", "eval", "mu x. dia x", "--lts", loop_file])
    out = capsys.readouterr().out
    assert code == 0 and out.splitlines()[0] == "false"


def test_mu_classify(capsys):
    assert cli.main(["mu", "classify", "mu x. box x"]) == 0
    out = capsys.readouterr().out
    assert "alternation-free=True" in out and "continuous=False" in out


def test_onestep_commands(capsys, tmp_path):
    assert cli.main(["onestep", "dual", "Einf x. a(x)"]) == 0
    assert capsys.readouterr().out.strip() == "Ainf x. a(x)"
    model = tmp_path / "m.json"
    model.write_text(json.dumps({"size": 1, "valuation": {"a": [0]}}))
    assert cli.main(["onestep", "eval", "E x. a(x)", "--model", str(model)]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert cli.main(["onestep", "nf", "E x. a(x) & A y. a(y)"]) == 0
    capsys.readouterr()
    assert cli.main(["onestep", "diamond", "E x. E y. (x!=y & a(x) & a(y))"]) == 0


def test_lts_commands(capsys, loop_file, tmp_path):
    assert cli.main(["lts", "validate", loop_file]) == 0
    assert "not a tree" in capsys.readouterr().out
    assert cli.main(["lts", "bisim", loop_file, loop_file]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(
        {"props": ["p"], "states": 1, "edges": [[0, 7]], "colors": {}, "init": 0}))
    assert cli.main(["lts", "validate", str(bad)]) == 1


def test_game_solve(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(
        {"owner": ["E"], "moves": [[0]], "priority": [0]}))
    assert cli.main(["game", "solve", str(path)]) == 0
    assert "exists wins: [0]" in capsys.readouterr().out


def test_fuzz_deterministic(capsys, tmp_path):
    rep1 = cli.run_fuzz("dual", 8, 42)
    rep2 = cli.run_fuzz("dual", 8, 42)
    assert rep1.to_json() == rep2.to_json()
    assert rep1.passed == 8


def test_fuzz_zero_instances():
    rep = cli.run_fuzz("adequacy", 0, 1)
    assert rep.ok() and rep.instances == 0


def test_fuzz_unknown_suite():
    assert cli.main(["fuzz", "nonsense"]) == 2


def test_replay_round_trip(tmp_path, capsys):
    rep = cli.run_fuzz("adequacy", 3, 11)
    assert rep.ok()
    payload = {"replay": {"suite": "adequacy", "seed": 11, "index": 2}}
    path = tmp_path / "replay.json"
    path.write_text(json.dumps(payload))
    assert cli.main(["replay", str(path)]) == 0


def test_mso_cli(capsys, loop_file, tmp_path):
    assert cli.main(["mso", "eval", "down p", "--logic", "wmso", "--lts", loop_file]) == 0
    capsys.readouterr()
    assert cli.main(["mso", "frommu", "mu x. dia x", "--logic", "wmso"]) == 0
    capsys.readouterr()
    # compiled automata refuse non-tree inputs without --force
    assert cli.main(["mso", "compile", "down p", "--logic", "wmso",
                     "--props", "p,q", "--lts", loop_file]) == 2
    capsys.readouterr()
    tree = tmp_path / "tree.json"
    tree.write_text(json.dumps(
        {"props": ["p", "q"], "states": 2, "edges": [[0, 1]], "colors": {"0": ["p"]}, "init": 0}))
    assert cli.main(["mso", "compile", "down p", "--logic", "wmso",
                     "--props", "p,q", "--lts", str(tree)]) == 0
    assert capsys.readouterr().out.strip() == "true"


def test_aut_cli(capsys, tmp_path, loop_file):
    assert cli.main(["aut", "fromformula", "mu x. dia x", "--props", "p,q"]) == 0
    aut_json = capsys.readouterr().out
    path = tmp_path / "a.json"
    path.write_text(aut_json)
    assert cli.main(["aut", "accept", "--in", str(path), "--lts", loop_file]) == 0
    assert capsys.readouterr().out.strip() == "false"
    assert cli.main(["aut", "classify", "--in", str(path)]) == 0
    assert "weak=True" in capsys.readouterr().out


def test_fix_cli(capsys, loop_file):
    assert cli.main(["fix", "trace", "p | dia r", "--var", "r", "--lts", loop_file]) == 0
    assert "fixpoint:" in capsys.readouterr().out
    assert cli.main(["fix", "unfold", "p | dia r", "--var", "r", "--lts", loop_file]) == 0


def test_parse_error_exit_code(capsys, loop_file):
    assert cli.main(["mu", "eval", "mu x. ((", "--lts", loop_file]) == 2
