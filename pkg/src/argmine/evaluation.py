"""Precision, recall and F1 of predicted Claim/Premise spans against gold."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable

from .text_model import Span

EVAL_TYPES = ("Claim", "Premise")
STRICT = "strict"
LENIENT = "lenient"


class DocumentMismatch(ValueError):
    pass


class MissingDocument(KeyError):
    def __str__(self) -> str:
        return f"document {self.args[0]!r} missing from {self.args[1]}"


def _matches(pred: Span, gold: Span, mode: str) -> bool:
    if mode == STRICT:
        return pred == gold
    if mode == LENIENT:
        return min(pred.end, gold.end) - max(pred.start, gold.start) >= 1
    raise ValueError(f"unknown evaluation mode {mode!r}")


def align_annotations(pred: Iterable[Span], gold: Iterable[Span], mode: str = STRICT,
                      pred_text: str | None = None, gold_text: str | None = None) -> tuple[int, int, int]:
    """Greedy one-to-one alignment in document order; returns (tp, fp, fn).

    Each prediction, in order, takes the earliest unmatched gold span it
    matches.
    """
    if pred_text is not None and gold_text is not None and pred_text != gold_text:
        raise DocumentMismatch("predicted and gold texts differ")
    pred = sorted(pred)
    gold = sorted(gold)
    used = [False] * len(gold)
    tp = 0
    for p in pred:
        for j, g in enumerate(gold):
            if not used[j] and _matches(p, g, mode):
                used[j] = True
                tp += 1
                break
    return tp, len(pred) - tp, len(gold) - tp


def prf_scores(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    if min(tp, fp, fn) < 0:
        raise ValueError("counts must be non-negative")
    if tp + fp:
        p = tp / (tp + fp)
    else:
        p = 1.0 if fn == 0 else 0.0
    if tp + fn:
        r = tp / (tp + fn)
    else:
        r = 1.0 if fp == 0 else 0.0
    # Same value as 2PR/(P+R), but a single rounding keeps F1 within [min(P, R), max(P, R)].
    if tp:
        f = 2 * tp / (2 * tp + fp + fn)
    else:
        f = 0.0 if p + r == 0 else 2 * p * r / (p + r)
    return p, r, f


@dataclass(frozen=True)
class Row:
    doc: str
    type: str
    tp: int
    fp: int
    fn: int

    @property
    def scores(self) -> tuple[float, float, float]:
        return prf_scores(self.tp, self.fp, self.fn)


@dataclass
class EvalReport:
    mode: str
    rows: list[Row] = field(default_factory=list)

    def total(self, type_: str) -> Row:
        sel = [r for r in self.rows if r.type == type_]
        return Row("TOTAL", type_, sum(r.tp for r in sel), sum(r.fp for r in sel), sum(r.fn for r in sel))

    def all_rows(self) -> list[Row]:
        return self.rows + [self.total(t) for t in EVAL_TYPES]

    def to_text(self) -> str:
        header = ("doc", "type", "tp", "fp", "fn", "P", "R", "F1")
        body = [(r.doc, r.type, str(r.tp), str(r.fp), str(r.fn), *(f"{x:.4f}" for x in r.scores))
                for r in self.all_rows()]
        widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
        out = [f"mode: {self.mode}"]
        for row in [header, *body]:
            out.append("  ".join(cell.ljust(w) if i < 2 else cell.rjust(w)
                                 for i, (cell, w) in enumerate(zip(row, widths))).rstrip())
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["doc", "type", "tp", "fp", "fn", "precision", "recall", "f1"])
        for r in self.all_rows():
            w.writerow([r.doc, r.type, r.tp, r.fp, r.fn, *(repr(x) for x in r.scores)])
        return buf.getvalue()


# A corpus maps doc id -> (text or None, {type: [spans]}).
Corpus = dict[str, tuple[str | None, dict[str, list[Span]]]]


def evaluate_corpus(pred: Corpus, gold: Corpus, mode: str = STRICT) -> EvalReport:
    report = EvalReport(mode)
    for doc_id in sorted(gold):
        if doc_id not in pred:
            raise MissingDocument(doc_id, "predictions")
    for doc_id in sorted(pred):
        if doc_id not in gold:
            raise MissingDocument(doc_id, "gold")
    for doc_id in sorted(gold):
        g_text, g_anns = gold[doc_id]
        p_text, p_anns = pred[doc_id]
        if g_text is not None and p_text is not None and g_text != p_text:
            raise DocumentMismatch(f"{doc_id}: predicted and gold texts differ")
        for t in EVAL_TYPES:
            tp, fp, fn = align_annotations(p_anns.get(t, []), g_anns.get(t, []), mode)
            report.rows.append(Row(doc_id, t, tp, fp, fn))
    return report
