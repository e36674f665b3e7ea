"""Command-line behaviour: formats, determinism, golden reproduction."""

import json

import pytest

from pats.cli import (
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    canonical_json,
    dispatch,
    parse_identity_json,
    result_digest,
)


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_straighten_command(capsys):
    code, out = run(capsys, "straighten", "(a,c,b)")
    assert code == EXIT_OK
    assert out.strip() == "-(a,b,c)"
    code, out = run(capsys, "straighten", "(a,b,b)")
    assert out.strip() == "0"


def test_usage_errors(capsys):
    assert dispatch(["nonsense"]) == EXIT_USAGE
    capsys.readouterr()
    assert dispatch(["straighten", "(a,b"]) == EXIT_USAGE
    capsys.readouterr()
    assert dispatch(["identities", "--degree", "5", "--modulus", "6"]) == EXIT_USAGE
    capsys.readouterr()
    assert dispatch(["ranks", "--degree", "7", "--modulus", "7"]) == EXIT_USAGE
    capsys.readouterr()
    assert dispatch(["ranks", "--degree", "7", "--partition", "42"]) == EXIT_USAGE
    capsys.readouterr()


def test_types_json(capsys):
    code, out = run(capsys, "--format", "json", "types", "--degree", "7")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["ca"]) == 2 and len(doc["pa"]) == 5
    assert doc["countsymmetry"] == [8, 12, 12, 12, 72]


def test_monomials_counts(capsys):
    code, out = run(
        capsys, "--format", "json", "monomials", "--degree", "7", "--vars", "aaabcde"
    )
    doc = json.loads(out)
    assert doc["counts"] == [60, 34, 34, 34, 3] and doc["total"] == 165


def test_expand_json(capsys):
    code, out = run(capsys, "--format", "json", "expand", "(a,b,c)")
    doc = json.loads(out)
    assert doc["terms"] == {
        "^abc": 1, "^acb": -1, "b^ac": -1, "c^ab": 1, "bc^a": 1, "cb^a": -1,
    }


def test_identities_json_round_trip(capsys):
    code, out = run(
        capsys, "--format", "json", "identities", "--degree", "5", "--modulus", "Q"
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["nullity"] == 40
    from pats.identities import is_identity

    for obj in doc["identities"]:
        poly = parse_identity_json(obj, doc["degree"])
        assert poly.term_count == obj["term_count"]
        assert is_identity(poly)


def test_identities_digest_stable(tmp_path, capsys):
    manifests = []
    for i in (0, 1):
        path = tmp_path / f"m{i}.json"
        code, _ = run(
            capsys,
            "--manifest", str(path),
            "--format", "json",
            "identities", "--degree", "5",
        )
        assert code == EXIT_OK
        manifests.append(json.loads(path.read_text()))
    assert manifests[0]["digest"] == manifests[1]["digest"]
    assert manifests[0]["command"] == "identities"
    assert manifests[0]["artifact_version"]


def test_ranks_text_and_csv(capsys):
    code, out = run(capsys, "ranks", "--degree", "7", "--partition", "31111")
    assert code == EXIT_OK
    assert "31111" in out and "64" in out
    code, out = run(
        capsys, "--format", "csv", "ranks", "--degree", "7", "--partition", "31111"
    )
    header, row = out.strip().splitlines()
    assert header.split(",") == ["partition", "dimension", "symrank", "exprank", "newrank"]
    assert row.split(",") == ["31111", "15", "63", "64", "1"]


def test_ranks_emit_matrix(tmp_path, capsys):
    path = tmp_path / "x.json"
    code, _ = run(
        capsys,
        "ranks", "--degree", "7", "--partition", "7", "--emit-matrix", str(path),
    )
    assert code == EXIT_OK
    doc = json.loads(path.read_text())
    assert doc["shape"] == [5, 12]
    assert doc["partition"] == "7"


def test_csv_rejected_for_non_tabular(capsys):
    assert dispatch(["--format", "csv", "straighten", "(a,b,c)"]) == EXIT_USAGE
    capsys.readouterr()


def test_degree9_single_partition_resumable(tmp_path, capsys):
    out_dir = tmp_path / "runs"
    code, out = run(
        capsys,
        "--format", "json",
        "degree9", "--partition", "9", "--out-dir", str(out_dir),
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["rows"][0]["symlifrank"] == doc["rows"][0]["exprank"] == 12
    saved = json.loads((out_dir / "partition_9.json").read_text())
    assert saved["no_new_identities"] is True
    # a second run must reuse the stored row
    code, out2 = run(
        capsys,
        "--format", "json",
        "degree9", "--partition", "9", "--out-dir", str(out_dir),
    )
    assert json.loads(out2)["rows"] == doc["rows"]


def test_clifton_and_tableaux(capsys):
    code, out = run(capsys, "--format", "json", "tableaux", "--partition", "21")
    doc = json.loads(out)
    assert doc["dimension"] == 2
    assert doc["tableaux"] == [[[1, 2], [3]], [[1, 3], [2]]]
    code, out = run(
        capsys, "--format", "json", "clifton", "--partition", "21", "--perm", "213"
    )
    doc = json.loads(out)
    assert doc["dimension"] == 2
    code, out = run(
        capsys,
        "--format", "json",
        "clifton", "--partition", "21", "--perm", "213", "--modulus", "101",
    )
    doc = json.loads(out)
    assert all(e.isdigit() for row in doc["matrix"] for e in row)


def test_reproduce_fast_artifacts(capsys):
    for artifact in ("table1", "table2", "table4", "thm7.6"):
        code, out = run(capsys, "reproduce", artifact)
        assert code == EXIT_OK, (artifact, out)
        assert "PASS" in out


def test_reproduce_detects_mismatch(monkeypatch, capsys):
    import pats.cli as cli

    real = cli._load_golden

    def corrupted(name):
        doc = real(name)
        doc["nullspace"] = [[9, 9, 9, 9, 9, 9]]
        return doc

    monkeypatch.setattr(cli, "_load_golden", corrupted)
    code, out = run(capsys, "reproduce", "table1")
    assert code == EXIT_MISMATCH
    assert "MISMATCH" in out and "FAIL" in out


def test_canonical_json_digest():
    a = {"b": 1, "a": [2, 3]}
    b = {"a": [2, 3], "b": 1}
    assert canonical_json(a) == canonical_json(b)
    assert result_digest(a) == result_digest(b)
    assert result_digest(a) != result_digest({"a": [2, 4], "b": 1})


def test_jobs_flag_preserves_output(capsys):
    code, seq = run(
        capsys, "--format", "json", "ranks", "--degree", "7", "--partition", "61"
    )
    code2, par = run(
        capsys,
        "--format", "json",
        "ranks", "--degree", "7", "--partition", "61", "--jobs", "2",
    )
    assert json.loads(seq) == json.loads(par)
