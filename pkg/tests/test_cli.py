"""Command-line behavior: outputs, exit codes, and determinism.

Everything runs in-process through main(argv), so exit codes come back
as return values and capsys separates stdout from stderr.
"""

from __future__ import annotations

import pytest

from sullivan.harness.cli import main

EIGHT_QUARTIC = """\
[model]
name = eightquartic
generators = [x:2, u:4, y:5, v:7]

[differential]
v = x^4
"""


@pytest.fixture
def quartic_path(tmp_path):
    path = tmp_path / "eightquartic.model"
    path.write_text(EIGHT_QUARTIC, encoding="utf-8")
    return str(path)


def test_validate_a_corpus_model(capsys):
    assert main(["validate", "cp2"]) == 0
    out = capsys.readouterr().out
    assert "ok: cp2" in out
    assert "lowest differential piece: 3" in out


def test_validate_a_model_file(capsys, quartic_path):
    assert main(["validate", quartic_path]) == 0
    assert "ok: eightquartic" in capsys.readouterr().out


def test_unknown_model_is_exit_3(capsys):
    assert main(["validate", "nosuchthing"]) == 3
    err = capsys.readouterr().err
    assert err.startswith("input error:")


def test_parse_errors_are_exit_3(capsys, tmp_path):
    path = tmp_path / "broken.model"
    path.write_text("[model]\ngenerators = [x]\n", encoding="utf-8")
    assert main(["validate", str(path)]) == 3
    assert capsys.readouterr().err.startswith("parse error:")


def test_betti_dump_is_exact(capsys):
    assert main(["betti", "s2s3", "--max-degree", "5", "--dump"]) == 0
    out = capsys.readouterr().out
    assert out == ("model = s2s3\n"
                   "betti.0 = 1\nbetti.1 = 0\nbetti.2 = 1\n"
                   "betti.3 = 1\nbetti.4 = 0\nbetti.5 = 1\n")


def test_toomer_prints_both_routes(capsys):
    assert main(["toomer", "cp3"]) == 0
    out = capsys.readouterr().out
    assert "toomer: 3" in out
    assert "routes_agree: true" in out


def test_toomer_without_a_fundamental_class_is_exit_3(capsys):
    assert main(["toomer", "kz2"]) == 3
    assert capsys.readouterr().err.startswith("input error:")


def test_depth_of_the_lowest_piece_of_cp2(capsys):
    assert main(["depth", "cp2", "--differential", "dk"]) == 0
    out = capsys.readouterr().out
    assert "name: cp2[d3]" in out
    assert "depth: 2" in out
    assert "raw_level=1" in out
    assert "effective_level=2" in out


def test_depth_truncation_failure_is_exit_2(capsys, quartic_path):
    assert main(["depth", quartic_path]) == 2
    assert capsys.readouterr().err.startswith("inconclusive:")


def test_pages_table_lists_every_page(capsys):
    rc = main(["pages", "cp2", "--filtration", "wordlength",
               "--r-max", "3", "--top", "8"])
    assert rc == 0
    out = capsys.readouterr().out
    for r in range(4):
        assert f"page r={r}" in out


def test_ext_pages_on_an_unstable_model_are_exit_2(capsys, quartic_path):
    rc = main(["pages", quartic_path, "--filtration", "ext-wordlength"])
    assert rc == 2
    assert capsys.readouterr().err.startswith("inconclusive:")


def test_verify_needs_a_model_or_the_corpus_flag(capsys):
    assert main(["verify", "--theorem", "1"]) == 3
    capsys.readouterr()


def test_verify_theorem_4_on_the_corpus(capsys):
    assert main(["verify", "--theorem", "4", "--all-corpus"]) == 0
    captured = capsys.readouterr()
    assert "overall: pass" in captured.out
    assert "elapsed:" in captured.err
    assert "elapsed:" not in captured.out


def test_verify_output_is_byte_identical_across_runs(capsys):
    assert main(["verify", "--theorem", "3", "--all-corpus", "--dump"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--theorem", "3", "--all-corpus", "--dump"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "overall = pass" in first


def test_remark_5_scan_of_the_corpus(capsys):
    assert main(["scan-remark5"]) == 0
    out = capsys.readouterr().out
    lines = [ln for ln in out.splitlines() if ln.startswith("eight")]
    assert len(lines) == 1
    assert "true" in lines[0]
    assert "ok" in lines[0]


def test_corpus_listing_is_deterministic(capsys):
    assert main(["corpus", "--dump"]) == 0
    first = capsys.readouterr().out
    assert main(["corpus", "--dump"]) == 0
    assert capsys.readouterr().out == first
    assert "cp2.expect.toomer = 2" in first
    assert first.count(".generators.0 =") == 10
