import json
import subprocess
import sys

import pytest

from powerchordal.cli import (
    EXIT_CHORDAL,
    EXIT_ERROR,
    EXIT_NON_CHORDAL,
    EXIT_UNDETERMINED,
    SCHEMA,
    CorpusEntry,
    default_corpus_text,
    main,
    parse_corpus,
    predicate_verdict,
    run_corpus,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    return code, doc


def test_chordal(capsys):
    code, doc = run_json(capsys, "chordal", "sym:5")
    assert code == EXIT_CHORDAL and doc["verdict"] == "chordal" and doc["order"] == 120
    code, doc = run_json(capsys, "chordal", "sym:6")
    assert code == EXIT_NON_CHORDAL
    hole = doc["hole"]
    assert hole["length"] >= 4 and hole["length"] % 2 == 0 and len(hole["labels"]) == hole["length"]
    code, doc = run_json(capsys, "chordal", "cyclic:30")
    assert code == EXIT_NON_CHORDAL


def test_chordal_longest_path(capsys):
    code, doc = run_json(capsys, "chordal", "dih:cyclic:12", "--longest-path")
    lp = doc["longest_induced_path"]
    assert lp["exact"] and 2 <= lp["length"] <= 19
    code, out, _ = run(capsys, "chordal", "dih:cyclic:12", "--longest-path")
    assert "longest induced path" in out


def test_criteria(capsys):
    code, doc = run_json(capsys, "criteria", "prod(q:8,cyclic:3)")
    fired = {r["criterion"] for r in doc["reports"] if r["fires"]}
    assert "c4" in fired and code == EXIT_NON_CHORDAL
    code, doc = run_json(capsys, "criteria", "psl:2,7")
    assert code == EXIT_CHORDAL and doc["implied"] == "chordal"
    code, doc = run_json(capsys, "criteria", "cyclic:4")
    assert not any(r["fires"] and r["implies"] == "non-chordal" for r in doc["reports"])
    assert code == EXIT_CHORDAL


def test_criteria_undetermined(capsys):
    # SL2(3): no criterion settles it either way
    code, out, _ = run(capsys, "criteria", "sl:2,3")
    assert code == EXIT_UNDETERMINED and "implied: undetermined" in out


@pytest.mark.parametrize("sid, code, word", [("psl:2,61", 1, "no"), ("alt:6", 0, "yes"), ("sz:8", 0, "yes")])
def test_classify(capsys, sid, code, word):
    got, out, _ = run(capsys, "classify", sid)
    assert got == code and out.startswith(f"{sid}: {word}")


@pytest.mark.parametrize("h, k, ok", [("ab:3x3", "cyclic:4", True), ("cyclic:6", "cyclic:6", False),
                                      ("sym:3", "ab:2x2", True)])
def test_product(capsys, h, k, ok):
    code, doc = run_json(capsys, "product", h, k)
    assert doc["chordal"] is ok and code == (EXIT_CHORDAL if ok else EXIT_NON_CHORDAL)


@pytest.mark.parametrize("argv", [["chordal", "foo:3"], ["chordal", "sym:8", "--cap", "1000"],
                                  ["classify", "alt:4"], ["product", "cyclic:30", "cyclic:7"]])
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_ERROR and err.startswith("error:")


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_determinism(capsys):
    outs = [run(capsys, "chordal", "sym:6", "--json")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    outs = [run(capsys, "criteria", "sl:2,5", "--json")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    _, doc = run_json(capsys, "chordal", "sym:4", "--timing")
    assert "seconds" in doc


@pytest.mark.parametrize("graph", ["power", "dpower", "commuting"])
def test_export(capsys, tmp_path, graph):
    target = tmp_path / f"{graph}.json"
    code, _, _ = run(capsys, "export", "sym:3", "--graph", graph, "--format", "json", "--out", str(target))
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["n"] == 6 and doc["directed"] == (graph == "dpower")
    code, out, _ = run(capsys, "export", "sym:3", "--graph", graph)
    assert out.startswith("digraph" if graph == "dpower" else "graph")


def test_corpus_parsing():
    entries = parse_corpus(default_corpus_text())
    assert len(entries) >= 50
    assert all(e.expected in ("chordal", "non-chordal") for e in entries)
    with pytest.raises(ValueError):
        parse_corpus("sym:5 | maybe | brute-force | x")
    with pytest.raises(ValueError):
        CorpusEntry("sym:5", "chordal", "oracle", "x")
    assert predicate_verdict("q:72").chordal is False
    assert predicate_verdict("sporadic:M11", check=False) is None


def test_corpus_small_config(capsys, tmp_path):
    cfg = tmp_path / "c.txt"
    cfg.write_text("# comment\nsym:5 | chordal | brute-force | lemma\n"
                   "sym:6 | non-chordal | criterion | lemma\nalt:7 | chordal | predicate | theorem\n")
    code, out, _ = run(capsys, "corpus", str(cfg))
    assert code == 0 and "3 entries, 0 mismatches" in out
    cfg.write_text("sym:6 | chordal | brute-force | deliberately wrong\n")
    code, out, _ = run(capsys, "corpus", str(cfg))
    assert code == 1 and "MISMATCH" in out


def test_corpus_order_is_by_index_with_pool():
    entries = parse_corpus("sym:4 | chordal | brute-force | a\ncyclic:30 | non-chordal | brute-force | b\n"
                           "alt:5 | chordal | predicate | c\n")
    rows = run_corpus(entries, jobs=2)
    assert [r["spec"] for r in rows] == ["sym:4", "cyclic:30", "alt:5"]
    assert all(r["status"] == "ok" for r in rows)


@pytest.mark.slow
def test_shipped_corpus_passes(capsys):
    code, doc = run_json(capsys, "corpus")
    assert doc["mismatches"] == 0 and code == 0, [r for r in doc["rows"] if r["status"] != "ok"]


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "powerchordal.cli", "classify", "alt:7", "--json"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["chordal"] is True
