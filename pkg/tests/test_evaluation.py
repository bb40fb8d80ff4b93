from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argmine.evaluation import (
    LENIENT, STRICT, DocumentMismatch, MissingDocument, align_annotations, evaluate_corpus, prf_scores,
)
from argmine.standoff import (
    StandoffDoc, StandoffError, StandoffRecord, format_standoff, parse_standoff, read_corpus_dir,
)
from argmine.text_model import Span
from oracles import expected_scores, planted_corpus


def test_identity_alignment():
    spans = [Span(0, 5), Span(6, 10), Span(20, 30)]
    assert align_annotations(spans, spans, STRICT) == (3, 0, 0)


def test_overlap_counts_only_in_lenient_mode():
    assert align_annotations([Span(10, 20)], [Span(12, 25)], LENIENT) == (1, 0, 0)
    assert align_annotations([Span(10, 20)], [Span(12, 25)], STRICT) == (0, 1, 1)
    assert align_annotations([Span(10, 20)], [Span(20, 25)], LENIENT) == (0, 1, 1)


def test_empty_prediction():
    assert align_annotations([], [Span(0, 1), Span(1, 2), Span(2, 3), Span(3, 4)]) == (0, 0, 4)


def test_each_gold_matched_once():
    assert align_annotations([Span(0, 10), Span(2, 8)], [Span(0, 10)], LENIENT) == (1, 1, 0)


def test_text_mismatch_is_an_error():
    with pytest.raises(DocumentMismatch):
        align_annotations([], [], STRICT, "a", "b")


def test_prf_examples():
    assert prf_scores(3, 1, 1) == (0.75, 0.75, 0.75)
    assert prf_scores(0, 0, 0) == (1.0, 1.0, 1.0)
    assert prf_scores(0, 0, 4) == (0.0, 0.0, 0.0)
    assert prf_scores(0, 3, 0) == (0.0, 0.0, 0.0)
    # P = 0.75 and R = 0.9
    p, r, f = prf_scores(27, 9, 3)
    assert (p, r) == pytest.approx((0.75, 0.9), abs=1e-12)
    assert f == pytest.approx(0.8181818181818182, abs=1e-12)


def test_negative_counts_rejected():
    with pytest.raises(ValueError):
        prf_scores(-1, 0, 0)


def test_planted_corpus_scores():
    pred, gold, planted = planted_corpus(random.Random(11))
    for mode in (STRICT, LENIENT):
        report = evaluate_corpus(pred, gold, mode)
        for row in report.rows:
            c = planted[(row.doc, row.type)]
            if mode == STRICT:
                counts = (c.tp, c.fp + c.shifted, c.fn + c.shifted)
            else:
                counts = (c.tp + c.shifted, c.fp, c.fn)
            assert (row.tp, row.fp, row.fn) == counts
            for got, want in zip(row.scores, expected_scores(*counts)):
                assert abs(got - float(want)) <= 1e-12


def test_identical_corpora_score_one():
    pred, gold, _ = planted_corpus(random.Random(5))
    report = evaluate_corpus(gold, gold, STRICT)
    assert all(r.scores == (1.0, 1.0, 1.0) for r in report.all_rows())


def test_empty_gold_corpus():
    report = evaluate_corpus({}, {}, STRICT)
    assert report.rows == []
    assert [r.scores for r in report.all_rows()] == [(1.0, 1.0, 1.0)] * 2
    assert report.to_text().splitlines()[1].split() == ["doc", "type", "tp", "fp", "fn", "P", "R", "F1"]


def test_missing_document_either_side():
    doc = (None, {"Claim": [Span(0, 1)]})
    with pytest.raises(MissingDocument):
        evaluate_corpus({}, {"a": doc})
    with pytest.raises(MissingDocument):
        evaluate_corpus({"a": doc}, {})


def test_report_renderings():
    pred, gold, _ = planted_corpus(random.Random(2), n_docs=2)
    report = evaluate_corpus(pred, gold, LENIENT)
    csv_lines = report.to_csv().splitlines()
    assert csv_lines[0] == "doc,type,tp,fp,fn,precision,recall,f1"
    assert len(csv_lines) == 1 + 4 + 2
    assert csv_lines[-1].startswith("TOTAL,Premise,")
    assert report.to_text().startswith("mode: lenient\n")


def test_standoff_round_trip():
    doc = StandoffDoc("d1", [StandoffRecord(0, 4, "Claim", (("indicatorText", "a;b=c%41 d"), ("kind", "CibVc"))),
                             StandoffRecord(5, 9, "Premise")])
    back = parse_standoff(format_standoff(doc))
    assert back.id == "d1"
    assert sorted(back.records) == sorted(doc.records)


def test_standoff_errors_name_file_and_line():
    with pytest.raises(StandoffError) as err:
        parse_standoff("Claim\t0\t4\n", "x.ann")
    assert err.value.line == 1
    with pytest.raises(StandoffError) as err:
        parse_standoff("#doc d\nClaim\t0\tfour\n", "x.ann")
    assert (err.value.path, err.value.line) == ("x.ann", 2)
    with pytest.raises(StandoffError):
        parse_standoff("#doc d\nClaim\t0\t9\n", "x.ann", doc_text="short")


def test_read_corpus_dir(tmp_path):
    (tmp_path / "d.txt").write_text("Some text.", encoding="utf-8")
    (tmp_path / "d.ann").write_text("#doc d\nClaim\t0\t4\t\n", encoding="utf-8")
    ((doc, text),) = read_corpus_dir(tmp_path).values()
    assert text == "Some text." and doc.of_type("Claim")[0].span == Span(0, 4)


counts = st.integers(0, 10**6)


@settings(max_examples=1000, deadline=None)
@given(counts, counts, counts)
def test_f1_between_precision_and_recall(tp, fp, fn):
    p, r, f = prf_scores(tp, fp, fn)
    assert 0 <= p <= 1 and 0 <= r <= 1 and 0 <= f <= 1
    if p + r > 0:
        assert min(p, r) <= f <= max(p, r)


span_lists = st.lists(st.tuples(st.integers(0, 40), st.integers(1, 8)).map(lambda t: Span(t[0], t[0] + t[1])),
                      max_size=8)


@settings(max_examples=300, deadline=None)
@given(span_lists, span_lists)
def test_alignment_properties(pred, gold):
    for mode in (STRICT, LENIENT):
        tp, fp, fn = align_annotations(pred, gold, mode)
        assert tp + fp == len(pred) and tp + fn == len(gold)
        rtp, rfp, rfn = align_annotations(gold, pred, mode)
        assert fp == rfn and fn == rfp
    assert align_annotations(pred, gold, STRICT)[0] <= align_annotations(pred, gold, LENIENT)[0]
