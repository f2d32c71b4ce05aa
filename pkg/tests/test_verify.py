"""Theorem checkers: statuses, quantities, and report aggregation."""

from __future__ import annotations

import pytest

from sullivan.errors import InputError
from sullivan.harness.corpus import corpus_model
from sullivan.harness.verify import (
    FAIL,
    INCONCLUSIVE,
    NOT_APPLICABLE,
    PASS,
    ModelResult,
    VerificationReport,
    lowest_piece_model,
    pure_model,
    remark_5_rows,
    verify,
    verify_corpus,
)


def test_lowest_piece_of_a_zero_differential_is_the_model_itself():
    model = corpus_model("s3")
    piece, k = lowest_piece_model(model)
    assert k is None
    assert piece is model


def test_lowest_piece_keeps_only_the_shortest_words():
    model = corpus_model("eight")
    piece, k = lowest_piece_model(model)
    assert k == 2
    assert piece.name == "eight[d2]"
    assert piece.lowest_part_index() == 2
    for value in piece.differential.values:
        for mono in value:
            assert sum(exp for _, exp in mono) == 2


def test_pure_model_of_a_pure_differential_is_identical_in_values():
    model = corpus_model("cp2")
    pured = pure_model(model)
    assert pured.differential.values == model.differential.values
    assert pured.name == "cp2[pure]"


def test_theorem_1_passes_on_the_elliptic_corpus():
    report = verify_corpus("1")
    by_name = {r.model: r for r in report.results}
    for name in ("s2", "s3", "s3s3", "cp2", "cp3", "cp4", "odd35", "s2s3"):
        assert by_name[name].status == PASS, by_name[name].detail
    assert by_name["kz2"].status == NOT_APPLICABLE
    assert report.overall() == PASS
    assert report.exit_code() == 0


def test_theorem_1_on_the_zero_differential_uses_the_model_itself():
    report = verify("1", [corpus_model("s3")])
    (result,) = report.results
    assert result.status == PASS
    assert result.quantities["k"] is None
    assert result.quantities["toomer"] == 1
    assert result.quantities["depth_lowest_piece"] == 1


def test_theorem_1_on_eight_fails_both_sides_of_the_equivalence():
    report = verify("1", [corpus_model("eight")])
    (result,) = report.results
    assert result.status == PASS
    assert result.quantities["lowest_piece_elliptic"] is False
    assert result.quantities["toomer"] == 4
    assert result.quantities["depth_lowest_piece"] == 2
    assert result.quantities["toomer"] != result.quantities["depth_lowest_piece"]


def test_theorem_3_agrees_on_the_elliptic_corpus():
    report = verify_corpus("3")
    by_name = {r.model: r for r in report.results}
    assert by_name["odd35"].status == PASS
    assert by_name["odd35"].quantities["depth"] == 3
    assert by_name["odd35"].quantities["depth_pure"] == 3
    assert by_name["kz2"].status == NOT_APPLICABLE
    assert report.exit_code() == 0


def test_corollary_4_formula_on_the_complex_projective_family():
    for name, n in (("cp2", 2), ("cp3", 3), ("cp4", 4)):
        report = verify("4", [corpus_model(name)])
        (result,) = report.results
        assert result.status == PASS, result.detail
        assert result.quantities["formula"] == n
        assert result.quantities["toomer"] == n
        assert result.quantities["toomer_lowest_piece"] == n


def test_corollary_4_skips_models_without_a_lowest_piece():
    report = verify("4", [corpus_model("s3")])
    (result,) = report.results
    assert result.status == NOT_APPLICABLE
    assert "zero" in result.detail


def test_corollary_4_skips_a_non_elliptic_lowest_piece():
    report = verify("4", [corpus_model("eight")])
    (result,) = report.results
    assert result.status == NOT_APPLICABLE


def test_corollary_4_on_a_mixed_product_model():
    report = verify("4", [corpus_model("s2s3")])
    (result,) = report.results
    assert result.status == PASS, result.detail
    assert result.quantities["formula"] == 2


def test_unknown_theorem_label_is_rejected():
    with pytest.raises(InputError):
        verify("2", [corpus_model("s2")])


def test_remark_5_scan_reports_only_undecided_lowest_pieces():
    rows = remark_5_rows([corpus_model(name) for name in
                          ("s2", "s3", "cp2", "eight", "kz2")])
    assert len(rows) == 1
    row = rows[0]
    assert row["model"] == "eight"
    assert row["k"] == 2
    assert row["formula"] == 2
    assert row["depth_pure_lowest_piece"] == 2
    assert row["agrees"] is True
    assert row["status"] == "ok"


def test_report_aggregation_orders_failure_over_inconclusive():
    results = [
        ModelResult("a", PASS, "r", {}, "", 0.0),
        ModelResult("b", INCONCLUSIVE, "r", {}, "", 0.0),
        ModelResult("c", FAIL, "r", {}, "", 0.0),
    ]
    report = VerificationReport("1", results)
    assert report.overall() == FAIL
    assert report.exit_code() == 1
    report = VerificationReport("1", results[:2])
    assert report.overall() == INCONCLUSIVE
    assert report.exit_code() == 2
    report = VerificationReport("1", [results[0],
                                      ModelResult("d", NOT_APPLICABLE, "r", {}, "", 0.0)])
    assert report.overall() == PASS
    assert report.exit_code() == 0
