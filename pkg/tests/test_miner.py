from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argmine.kb import ConceptAssertion, Literal, RoleAssertion
from argmine.miner import (
    EXTENDED, STRICT, Argument, OrderClass, arguments_to_assertions, assemble_arguments,
    mine_document, mine_sentence,
)
from argmine.pipeline import annotate_document
from oracles import algorithm1_oracle, generate_sentence

CORPUS = Path(__file__).resolve().parents[1] / "corpus" / "minicorpus"

CP_TEXT = (CORPUS / "ex_cp.txt").read_text(encoding="utf-8")
PC_TEXT = (CORPUS / "ex_pc.txt").read_text(encoding="utf-8")
ARG_TEXT = (CORPUS / "ex_argument.txt").read_text(encoding="utf-8")
PI_TEXT = (CORPUS / "ex_premise_indicator.txt").read_text(encoding="utf-8")


def spans(claim, premise):
    return ((claim.span.start, claim.span.end) if claim else None,
            (premise.span.start, premise.span.end) if premise else None)


def test_cp_sentence_split():
    doc = annotate_document("ex_cp", CP_TEXT)
    claim, premise = mine_sentence(0, doc)
    assert claim.text == "Patients report on the risk of breast cancer"
    assert premise.text.startswith("according to histologic findings, the age at diagnosis")
    assert spans(claim, premise) == ((0, 44), (45, 160))
    assert premise.indicator.text == "according to"


def test_claim_macro_without_cc_runs_to_terminal():
    doc = annotate_document("ex_argument", ARG_TEXT)
    claim, premise = mine_sentence(0, doc)
    k = ARG_TEXT.index("Key informants highlighted")
    terminal = doc.sentences[0].terminal.start
    assert (claim.span.start, claim.span.end) == (k, terminal)
    assert claim.indicator.text == "Key informants highlighted"
    assert premise is None


def test_sentence_without_macros_gives_nothing():
    doc = annotate_document("d", "The weather was mild on Tuesday.")
    assert mine_sentence(0, doc, STRICT) == (None, None)
    assert mine_sentence(0, doc, EXTENDED) == (None, None)


def test_cc_without_claim_macro_depends_on_mode():
    doc = annotate_document("d", "The data rose and given that noted the trial.")
    assert mine_sentence(0, doc, STRICT) == (None, None)
    claim, premise = mine_sentence(0, doc, EXTENDED)
    assert claim is None and premise.text == "given that noted the trial"


def test_pc_example_is_one_pc_argument():
    doc = annotate_document("ex_pc", PC_TEXT)
    (arg,) = assemble_arguments(doc)
    assert arg.order is OrderClass.PC
    assert arg.claim.text == "doctors reported no increased risk"
    assert arg.premises[0].span.start == 0


def test_cp_example_is_one_cp_argument():
    (arg,) = assemble_arguments(annotate_document("ex_cp", CP_TEXT))
    assert arg.order is OrderClass.CP


def test_indicator_in_later_sentence_is_claim_premise():
    (arg,) = assemble_arguments(annotate_document("ex_premise_indicator", PI_TEXT))
    assert arg.order is OrderClass.CLAIM_PREMISE
    assert arg.claim.sentence == 0 and arg.premises[0].sentence == 1


def test_window_limits_cross_sentence_attachment():
    doc = annotate_document("ex_argument", ARG_TEXT)
    assert len(assemble_arguments(doc, window=2)) == 1
    assert assemble_arguments(doc, window=1) == []


def test_argument_requires_premise():
    doc = annotate_document("ex_cp", CP_TEXT)
    claim, _ = mine_sentence(0, doc)
    with pytest.raises(ValueError):
        Argument("x_arg1", claim, (), OrderClass.CP)


def test_assertions_carry_claim_indicator_text():
    doc = annotate_document("ex_argument", ARG_TEXT)
    facts = set(arguments_to_assertions(assemble_arguments(doc)))
    assert RoleAssertion("ex_argument_c1", "hasClaimIndicator", Literal("Key informants highlighted")) in facts
    assert RoleAssertion("ex_argument_arg1", "hasClaim", "ex_argument_c1") in facts
    assert RoleAssertion("ex_argument_arg1", "hasPremise", "ex_argument_p1") in facts
    assert ConceptAssertion("ex_argument_arg1", "ClaimPremiseArgument") in facts


def test_premise_before_claim_gives_before_edge():
    facts = set(arguments_to_assertions(assemble_arguments(annotate_document("ex_pc", PC_TEXT))))
    assert RoleAssertion("ex_pc_p1", "before", "ex_pc_c1") in facts
    assert RoleAssertion("ex_pc_c1", "before", "ex_pc_p1") not in facts


def test_no_arguments_no_assertions():
    assert arguments_to_assertions([]) == []


def test_mine_document_records_annotations():
    doc = annotate_document("ex_cp", CP_TEXT)
    mine_document(doc)
    mine_document(doc)
    assert [(a.type, a.span.start, a.span.end) for a in doc.get("Claim", "Premise")] == [
        ("Claim", 0, 44), ("Premise", 45, 160)]


def test_generated_sentences_match_oracle():
    rng = random.Random(7)
    for _ in range(200):
        s = generate_sentence(rng)
        doc = annotate_document("g", s.text)
        for mode in (STRICT, EXTENDED):
            assert spans(*mine_sentence(0, doc, mode)) == algorithm1_oracle(s, mode), (s.text, mode)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_mining_invariants(seed, n):
    rng = random.Random(seed)
    text = " ".join(generate_sentence(rng).text for _ in range(n))
    doc = annotate_document("h", text)
    strict = mine_document(annotate_document("h", text), STRICT)
    extended = mine_document(doc, EXTENDED)
    for i, ((sc, sp), (ec, ep)) in enumerate(zip(strict, extended)):
        sentence = doc.sentences[i]
        for part in (ec, ep):
            if part is not None:
                assert sentence.span.contains(part.span)
                assert part.span.end <= sentence.terminal.start or sentence.terminal.start == sentence.terminal.end
                assert part.text == doc.slice(part.span)
        if ec and ep:
            assert ec.span.end <= ep.span.start or ep.span.end <= ec.span.start
        for s, e in ((sc, ec), (sp, ep)):
            assert s is None or s == e
    for arg in assemble_arguments(doc, mined=extended):
        assert arg.premises
        pc = any(p.span.start < arg.claim.span.start for p in arg.premises)
        assert (arg.order is OrderClass.PC) == pc
