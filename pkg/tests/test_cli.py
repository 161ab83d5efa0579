import json
from pathlib import Path

import pytest

from rootstack.cli import main

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exit_codes(capsys):
    assert run(capsys, "sod-theta", "--l", "2", "--quiet")[0] == 0
    assert run(capsys, "tau-triangles", "--l", "2", "--quiet")[0] == 1
    assert run(capsys, "sod-chart", "--l", "2", "--divisor", "4", "--depth", "3", "--quiet")[0] == 3
    assert run(capsys, "lemma-key", "--l", "1")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "decompose", "--sample", "Q")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_claim_lines(capsys):
    code, out, _ = run(capsys, "sod-theta", "--l", "2")
    lines = out.strip().splitlines()
    assert all(line.startswith("[PASS] sod-theta ") for line in lines[:-1])
    assert lines[-1] == f"sod-theta: {len(lines) - 1} pass, 0 fail, 0 inconclusive"


def test_json_stdout_schema(capsys):
    code, out, err = run(capsys, "decompose", "--l", "2", "--index", "0", "--sample", "O(-1)", "--json", "-")
    doc = json.loads(out)
    assert set(doc) == {"schema", "suite", "config", "claims", "summary"}
    assert doc["config"]["l"] == [2] and doc["config"]["samples"] == ["O(-1)"]
    (claim,) = doc["claims"]
    assert set(claim) == {"claim", "citation", "params", "status", "witness"}
    assert claim["params"] == {"i": 0, "l": 2, "m": "O(-1)"}
    assert doc["summary"] == {"pass": 1, "fail": 0, "inconclusive": 0, "exit_code": 0}
    assert "decompose: 1 pass" in err


def test_yaml_config_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    out = tmp_path / "r.json"
    cfg.write_text(
        "suite: decompose\nl: [2, 3]\nindex: 0\nsamples: [O]\n"
        "citations: {decompose.filtration: 'filtration'}\n"
        f"output: {{json: {out}, quiet: true}}\n"
    )
    code, stdout, _ = run(capsys, "--config", str(cfg), "--l", "2")
    assert code == 0
    assert stdout.strip() == "decompose: 1 pass, 0 fail, 0 inconclusive"
    doc = json.loads(out.read_text())
    assert doc["config"]["l"] == [2]
    assert doc["claims"][0]["citation"].startswith("filtration: ")


@pytest.mark.parametrize(
    "text",
    ["suite: decompose\ncolour: red\n", "suite: decompose\nl: two\n", "- a\n- b\n", "suite: decompose\nwindow: 5\n", "suite: [\n"],
)
def test_bad_yaml(tmp_path, capsys, text):
    cfg = tmp_path / "c.yaml"
    cfg.write_text(text)
    code, _, err = run(capsys, "--config", str(cfg))
    assert code == 2 and "config error" in err


def test_missing_config(capsys):
    assert run(capsys, "--config", "/nonexistent/c.yaml")[0] == 2


def test_deterministic_json(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "sod-chart", "--l", "2", "--divisor", "4", "--json", str(a))
    run(capsys, "sod-chart", "--l", "2", "--divisor", "4", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_golden_roundtrip(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ROOTSTACK_CORPUS", str(tmp_path))
    assert run(capsys, "sod-theta", "--l", "2", "--golden")[0] == 2  # no golden file yet
    assert run(capsys, "sod-theta", "--l", "2", "--write-golden", "--quiet")[0] == 0
    assert run(capsys, "sod-theta", "--l", "2", "--golden", "--quiet")[0] == 0
    assert run(capsys, "sod-theta", "--l", "3", "--golden", "--quiet")[0] == 1


@pytest.mark.parametrize("suite", ["sod-theta", "sod-chart", "decompose"])
def test_shipped_corpus_matches(suite, capsys, monkeypatch):
    if not (CORPUS / f"{suite}.json").exists():
        pytest.skip("corpus not generated")
    monkeypatch.setenv("ROOTSTACK_CORPUS", str(CORPUS))
    assert run(capsys, suite, "--golden", "--quiet")[0] == 0
