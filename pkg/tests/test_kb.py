from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argmine.kb import (
    And, Atomic, ConceptAssertion, Definition, Exists, Forall, Inverse, KnowledgeBase, Literal,
    MalformedAssertion, Not, ParseError, RoleAssertion, SubClass, SubRole, TBoxError, Transitive,
    UnknownName, builtin_tbox, format_abox, format_tbox, parse_abox, parse_abox_text, parse_tbox,
)
from oracles import naive_closure, random_kb_facts


def kb_of(*facts) -> KnowledgeBase:
    kb = KnowledgeBase()
    for f in facts:
        kb.assert_fact(f)
    return kb


def test_builtin_tbox_contents():
    tbox = builtin_tbox()
    assert Transitive("supports") in tbox
    assert Inverse("before", "after") in tbox
    assert SubRole("hasPremiseIndicator", "hasIndicator") in tbox
    assert SubRole("hasClaimIndicator", "hasIndicator") in tbox
    assert SubClass("BreastCancer", "Cancer") in tbox and SubClass("Cancer", "Disease") in tbox
    for name in ("PremiseIndicator", "ClaimIndicator", "MacroIndicator"):
        assert SubClass(name, "Indicator") in tbox
    assert {d.name for d in tbox if isinstance(d, Definition)} >= {
        "Argument", "Claim", "Premise", "PCArgument", "CPArgument"}


def test_assert_fact_examples():
    kb = kb_of(ConceptAssertion("a", "BreastCancer"))
    kb.assert_fact(RoleAssertion("a", "appliedTreatment", "Chemotherapy"))
    before = set(kb.asserted)
    kb.assert_fact(ConceptAssertion("a", "BreastCancer"))
    assert kb.asserted == before
    assert RoleAssertion("a", "appliedTreatment", "Chemotherapy") in kb.asserted
    assert not kb.closed


def test_malformed_assertions_are_rejected():
    kb = KnowledgeBase()
    for bad in (ConceptAssertion("", "C"), ConceptAssertion("a", ""), RoleAssertion("a", "", "b"),
                RoleAssertion("a", "before", Literal("text")), RoleAssertion("a", "before", "")):
        with pytest.raises(MalformedAssertion):
            kb.assert_fact(bad)


def test_materialize_examples():
    kb = kb_of(RoleAssertion("a", "before", "b"), RoleAssertion("b", "before", "c"),
               RoleAssertion("p", "hasPremiseIndicator", Literal("In particular")))
    kb.materialize()
    assert kb.closed
    assert RoleAssertion("a", "before", "c") in kb.facts
    assert RoleAssertion("b", "after", "a") in kb.facts
    assert RoleAssertion("p", "hasIndicator", Literal("In particular")) in kb.facts
    assert ConceptAssertion("a", "Sentence") in kb.derived


def test_query_disease_through_two_subsumptions():
    kb = kb_of(ConceptAssertion("a", "BreastCancer"))
    assert kb.query_concept_instances("Disease") == {"a"}


def test_empty_kb_queries_are_empty():
    kb = KnowledgeBase()
    assert kb.query_concept_instances("PCArgument") == set()
    assert kb.query_role("hasClaim") == set()


def test_unknown_names_raise():
    with pytest.raises(UnknownName):
        KnowledgeBase().query_concept_instances("Nonexistent")
    with pytest.raises(UnknownName):
        KnowledgeBase().query_role("likes")


def test_query_role_by_subject():
    kb = kb_of(RoleAssertion("a", "hasClaim", "c"), RoleAssertion("b", "hasClaim", "d"))
    assert kb.query_role("hasClaim", "a") == {("a", "c")}


def argument_facts(order: str) -> list:
    first, second = ("p", "c") if order == "PC" else ("c", "p")
    return [
        RoleAssertion("a", "hasClaim", "c"), RoleAssertion("a", "hasPremise", "p"),
        RoleAssertion("c", "hasText", Literal("claim text")),
        RoleAssertion("c", "hasClaimIndicator", Literal("doctors reported")),
        RoleAssertion("p", "hasText", Literal("premise text")),
        RoleAssertion("p", "hasPremiseIndicator", Literal("For women")),
        ConceptAssertion("c", "Claim"), ConceptAssertion("p", "Premise"),
        RoleAssertion(first, "before", second),
    ]


def test_classify_pc_and_cp_examples():
    pc = kb_of(*argument_facts("PC")).classify_individuals()
    assert pc.query_concept_instances("PCArgument") == {"a"}
    assert pc.query_concept_instances("CPArgument") == set()
    assert "a" in pc.query_concept_instances("Argument")
    cp = kb_of(*argument_facts("CP")).classify_individuals()
    assert cp.query_concept_instances("CPArgument") == {"a"}
    assert cp.query_concept_instances("PCArgument") == set()


def test_claim_and_premise_defined_from_text_and_indicator():
    kb = kb_of(RoleAssertion("c", "hasText", Literal("t")),
               RoleAssertion("c", "hasClaimIndicator", Literal("Thus accepted")),
               RoleAssertion("c", "hasIndicator", "i"), ConceptAssertion("i", "ClaimIndicator"))
    assert "c" in kb.classify_individuals().query_concept_instances("Claim")


def test_premise_without_claim_is_not_an_argument():
    kb = kb_of(RoleAssertion("a", "hasPremise", "p"), ConceptAssertion("p", "Premise"))
    assert "a" not in kb.classify_individuals().query_concept_instances("Argument")


def test_two_claims_break_exactly_one():
    unordered = argument_facts("PC")[:-1]
    assert "a" in kb_of(*unordered).classify_individuals().query_concept_instances("Argument")
    kb = kb_of(*unordered, RoleAssertion("a", "hasClaim", "c2"), ConceptAssertion("c2", "Claim"))
    assert "a" not in kb.classify_individuals().query_concept_instances("Argument")


def test_abox_text_examples():
    kb = parse_abox_text('a : BreastCancer\n(doc1_arg1, doc1_c1) : hasClaim\n'
                         '(doc1_c1, "Key informants highlighted") : hasClaimIndicator\n# note\n')
    assert kb.asserted == {
        ConceptAssertion("a", "BreastCancer"), RoleAssertion("doc1_arg1", "hasClaim", "doc1_c1"),
        RoleAssertion("doc1_c1", "hasClaimIndicator", Literal("Key informants highlighted"))}
    assert parse_abox_text("").asserted == set()
    quoted = parse_abox_text('(a, "Chemotherapy") : appliedTreatment\n')
    assert quoted.asserted == {RoleAssertion("a", "appliedTreatment", "Chemotherapy")}


def test_abox_parse_errors_carry_line():
    with pytest.raises(ParseError) as err:
        parse_abox_text("a : C\n(a b) : r\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_abox_text('(a, "x") : before\n'.replace('"x"', '"x'))


def test_export_with_derived_round_trips(tmp_path):
    kb = kb_of(*argument_facts("PC"), RoleAssertion("odd name", "hasText", Literal('say "hi"\n')))
    kb.classify_individuals()
    for with_derived in (False, True):
        path = tmp_path / f"abox{with_derived}.txt"
        path.write_text(format_abox(kb, with_derived), encoding="utf-8")
        back = parse_abox(path)
        assert back.asserted == kb.asserted
        assert back.derived == (kb.derived if with_derived else set())


def test_tbox_text_round_trip_and_errors():
    text = "Tumor subClassOf Disease\ntransitive causes\ninverse causes causedBy\nsubRole a b\ndomain r C\nrange r D\n"
    axioms = parse_tbox(text)
    assert parse_tbox(format_tbox(axioms)) == axioms
    with pytest.raises(ParseError) as err:
        parse_tbox("A subClassOf B\nA equivalent B\n")
    assert err.value.line == 2
    kb = KnowledgeBase(tbox=builtin_tbox() + parse_tbox("Tumor subClassOf Disease"))
    kb.assert_fact(ConceptAssertion("t", "Tumor"))
    assert kb.query_concept_instances("Disease") == {"t"}


def test_bad_definitions_are_rejected():
    with pytest.raises(TBoxError):
        KnowledgeBase(tbox=[Definition("A", Exists("r", Atomic("B"))), Definition("B", Exists("s", Atomic("A")))])
    with pytest.raises(TBoxError):
        KnowledgeBase(tbox=[Definition("A", Not(Atomic("B")))])
    with pytest.raises(TBoxError):
        KnowledgeBase(tbox=[Definition("A", And((Atomic("B"), Forall("r", Atomic("C")))))])
    with pytest.raises(TBoxError):
        KnowledgeBase(tbox=[Definition("A", Atomic("B")), Definition("A", Atomic("C"))])


def test_materialize_matches_naive_closure_sample():
    rng = random.Random(3)
    for _ in range(50):
        facts = random_kb_facts(rng)
        assert kb_of(*facts).materialize().facts == naive_closure(facts)


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_materialize_is_idempotent(seed):
    kb = kb_of(*random_kb_facts(random.Random(seed))).materialize()
    once = set(kb.facts)
    assert kb.materialize().facts == once


@settings(max_examples=100, deadline=None)
@given(seeds, seeds)
def test_materialize_is_monotone(seed, extra_seed):
    facts = random_kb_facts(random.Random(seed))
    base = kb_of(*facts).materialize().facts
    extra = list(random_kb_facts(random.Random(extra_seed), max_assertions=3))
    grown = kb_of(*facts, *extra).materialize().facts
    assert base <= grown


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_before_after_are_symmetric_after_closure(seed):
    facts = kb_of(*random_kb_facts(random.Random(seed))).materialize().facts
    roles = {(f.subject, f.role, f.object) for f in facts if isinstance(f, RoleAssertion)}
    for x, r, y in roles:
        if r == "before":
            assert (y, "after", x) in roles
        if r == "after":
            assert (y, "before", x) in roles


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_pc_and_cp_are_arguments(seed):
    kb = kb_of(*random_kb_facts(random.Random(seed))).classify_individuals()
    ordered = kb.query_concept_instances("PCArgument") | kb.query_concept_instances("CPArgument")
    assert ordered <= kb.query_concept_instances("Argument")
