"""Execution of rule phases over a document's annotations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..text_model import Annotation, Document, Sentence, Span
from .dsl import LabelText, Phase, Quantifier, Rule


@dataclass(frozen=True)
class _Cand:
    ann: Annotation
    first: int  # token index of the first covered token
    stop: int   # token index one past the last covered token


@dataclass(frozen=True)
class Match:
    rule_index: int
    rule: Rule
    start: int          # char offset
    end: int            # char offset
    stop_token: int
    bound: tuple[tuple[int, Annotation], ...]  # (element index, annotation)


def _candidates(doc: Document, phase: Phase) -> dict[int, list[_Cand]]:
    """Input annotations aligned to token boundaries, keyed by first token."""
    starts = {t.span.start: i for i, t in enumerate(doc.tokens)}
    ends = {t.span.end: i + 1 for i, t in enumerate(doc.tokens)}
    wanted = set(phase.input_types)
    by_first: dict[int, list[_Cand]] = {}
    for ann in doc.annotations:
        if ann.type not in wanted:
            continue
        first = starts.get(ann.span.start)
        stop = ends.get(ann.span.end)
        if first is None or stop is None or stop <= first:
            continue
        by_first.setdefault(first, []).append(_Cand(ann, first, stop))
    for cands in by_first.values():
        cands.sort(key=lambda c: (-c.stop, c.ann.id))
    return by_first


def _rule_matches(rule: Rule, pos: int, sentence: Sentence, gap: int,
                  by_first: dict[int, list[_Cand]]) -> Iterator[tuple[int, tuple[tuple[int, _Cand], ...]]]:
    """Yield (stop token, bindings) for every way `rule` matches at `pos`."""
    lhs = rule.lhs
    limit = sentence.token_end

    def options(el_index: int, frontier: int | None) -> Iterator[_Cand]:
        el = lhs[el_index]
        if frontier is None:
            window = range(pos, pos + 1)
        else:
            window = range(frontier, min(frontier + gap, limit - 1) + 1)
        for t in window:
            for cand in by_first.get(t, ()):
                if cand.stop <= limit and el.accepts(cand.ann.type, cand.ann.features):
                    yield cand

    def walk(el_index: int, frontier: int | None, taken: int, acc: tuple) -> Iterator:
        if el_index == len(lhs):
            if acc:
                yield frontier, acc
            return
        el = lhs[el_index]
        q = el.quantifier
        repeatable = q in (Quantifier.STAR, Quantifier.PLUS)
        if taken == 0 or repeatable:
            for cand in options(el_index, frontier):
                yield from walk(el_index, cand.stop, taken + 1, acc + ((el_index, cand),))
        may_leave = (taken >= 1 or q in (Quantifier.OPTIONAL, Quantifier.STAR))
        if may_leave:
            yield from walk(el_index + 1, frontier, 0, acc)

    yield from walk(0, None, 0, ())


def find_match(phase: Phase, pos: int, sentence: Sentence, doc: Document,
               by_first: dict[int, list[_Cand]]) -> Match | None:
    """Best match starting at token `pos`: longest, then highest priority,
    then earliest rule; within a rule the first found in search order."""
    best: Match | None = None
    best_key = None
    for index, rule in enumerate(phase.rules):
        for stop, acc in _rule_matches(rule, pos, sentence, phase.gap, by_first):
            end = max(c.ann.span.end for _, c in acc)
            key = (end, rule.priority, -index)
            if best_key is None or key > best_key:
                start = doc.tokens[pos].span.start
                bound = tuple((i, c.ann) for i, c in acc)
                best = Match(index, rule, start, end, max(c.stop for _, c in acc), bound)
                best_key = key
    return best


def _apply(doc: Document, match: Match) -> list[Annotation]:
    spans: dict[str, Span] = {}
    for el_index, ann in match.bound:
        for label in match.rule.lhs[el_index].bindings:
            prev = spans.get(label)
            spans[label] = ann.span if prev is None else Span(min(prev.start, ann.span.start), max(prev.end, ann.span.end))
    added = []
    for action in match.rule.rhs:
        span = spans.get(action.label)
        if span is None:
            continue
        features = {}
        for name, value in action.features:
            if isinstance(value, LabelText):
                bound = spans.get(value.label)
                features[name] = doc.slice(bound) if bound else ""
            else:
                features[name] = value
        added.append(doc.add(action.type, span, features))
    return added


def run_phase(doc: Document, phase: Phase) -> Document:
    """Run one phase: left-to-right, longest match wins, matched tokens are
    consumed so no two matches of the phase overlap."""
    by_first = _candidates(doc, phase)
    for sentence in doc.sentences:
        pos = sentence.token_start
        while pos < sentence.token_end:
            match = find_match(phase, pos, sentence, doc, by_first) if pos in by_first else None
            if match is None:
                pos += 1
                continue
            _apply(doc, match)
            pos = match.stop_token
    return doc


def run_phases(doc: Document, phases: list[Phase]) -> Document:
    for phase in phases:
        run_phase(doc, phase)
    return doc
