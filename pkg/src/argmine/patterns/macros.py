"""Built-in claim and premise macro-indicator schemas.

Each schema is a rule in the pattern language; `builtin_phases` compiles
them for a given inter-element gap. `annotate_macros` runs both phases and
then settles the two ambiguities the schemas leave open:

* the elements-of-cancer schema exists on both sides; a claim verb (or no
  verb) makes it a claim cue, a premise verb makes it a premise cue;
* "so" and "for" are indicators and coordinating conjunctions; a bare
  single-word indicator match on them is dropped so the word stays a
  conjunction, while any longer schema that uses them keeps them.
"""

from __future__ import annotations

import logging
from enum import Enum
from functools import lru_cache

from ..text_model import Annotation, Document, Pos
from .dsl import Phase, parse_rules
from .engine import run_phase

log = logging.getLogger(__name__)

CLAIM_MACRO = "ClaimMacro"
PREMISE_MACRO = "PremiseMacro"
DEFAULT_GAP = 3


class MacroKind(str, Enum):
    Ci = "Ci"
    Pi = "Pi"
    CibPe = "CibPe"
    CibPebVc = "CibPebVc"
    CibVc = "CibVc"
    ElOfCnbCw_Claim = "ElOfCnbCw_Claim"
    QbPebVc = "QbPebVc"
    PibPe = "PibPe"
    PibPebVp = "PibPebVp"
    PibVp = "PibVp"
    ElOfCnbCw_Premise = "ElOfCnbCw_Premise"
    DbVp = "DbVp"


CLAIM_KINDS = frozenset({MacroKind.Ci, MacroKind.CibPe, MacroKind.CibPebVc, MacroKind.CibVc,
                         MacroKind.ElOfCnbCw_Claim, MacroKind.QbPebVc})
PREMISE_KINDS = frozenset(MacroKind) - CLAIM_KINDS

MACRO_SOURCE = """\
Phase: ClaimMacros
Input: ClaimIndicator PeopleInvolved VerbRelatedToClaim Qualifier DomainsAffected ElementsOfCancer CancerRelatedWords
Gap: {gap}

Rule: CibPebVc
Priority: 60
(({{ClaimIndicator}}):cue ({{PeopleInvolved}}) ({{VerbRelatedToClaim}}):verb):m
-->
:m.ClaimMacro = {{kind = "CibPebVc", indicatorText = :m.text, cue = :cue.text, verb = :verb.text}}

Rule: QbPebVc
Priority: 60
(({{Qualifier}}):cue ({{PeopleInvolved}}) ({{VerbRelatedToClaim}}):verb):m
-->
:m.ClaimMacro = {{kind = "QbPebVc", indicatorText = :m.text, cue = :cue.text, verb = :verb.text}}

Rule: CibPe
Priority: 40
(({{ClaimIndicator}}):cue ({{PeopleInvolved}})):m
-->
:m.ClaimMacro = {{kind = "CibPe", indicatorText = :m.text, cue = :cue.text}}

// a claim verb after an indicator, or after the people or domain it concerns
Rule: CibVc
Priority: 40
(({{ClaimIndicator}} | {{PeopleInvolved}} | {{DomainsAffected}}):cue ({{VerbRelatedToClaim}}):verb):m
-->
:m.ClaimMacro = {{kind = "CibVc", indicatorText = :m.text, cue = :cue.text, verb = :verb.text}}

Rule: ElOfCnbCw_Claim
Priority: 30
(({{ElementsOfCancer}})+:cue ({{CancerRelatedWords}}) ({{VerbRelatedToClaim}})?:verb):m
-->
:m.ClaimMacro = {{kind = "ElOfCnbCw_Claim", indicatorText = :m.text, cue = :cue.text, verb = :verb.text}}

Rule: Ci
Priority: 10
(({{ClaimIndicator}}):cue):m
-->
:m.ClaimMacro = {{kind = "Ci", indicatorText = :m.text, cue = :cue.text}}

Phase: PremiseMacros
Input: PremiseIndicator PeopleInvolved VerbRelatedToPremise DomainsAffected ElementsOfCancer CancerRelatedWords
Gap: {gap}

Rule: PibPebVp
Priority: 60
(({{PremiseIndicator}}):cue ({{PeopleInvolved}}) ({{VerbRelatedToPremise}}):verb):m
-->
:m.PremiseMacro = {{kind = "PibPebVp", indicatorText = :m.text, cue = :cue.text, verb = :verb.text}}

Rule: PibPe
Priority: 40
(({{PremiseIndicator}}):cue ({{PeopleInvolved}})):m
-->
:m.PremiseMacro = {{kind = "PibPe", indicatorText = :m.text, cue = :cue.text}}

Rule: PibVp
Priority: 40
(({{PremiseIndicator}}):cue ({{VerbRelatedToPremise}}):verb):m
-->
:m.PremiseMacro = {{kind = "PibVp", indicatorText = :m.text, cue = :cue.text, verb = :verb.text}}

Rule: ElOfCnbCw_Premise
Priority: 30
(({{ElementsOfCancer}})+:cue ({{CancerRelatedWords}}) ({{VerbRelatedToPremise}}):verb):m
-->
:m.PremiseMacro = {{kind = "ElOfCnbCw_Premise", indicatorText = :m.text, cue = :cue.text, verb = :verb.text}}

Rule: DbVp
Priority: 30
(({{DomainsAffected}}):cue ({{VerbRelatedToPremise}}):verb):m
-->
:m.PremiseMacro = {{kind = "DbVp", indicatorText = :m.text, cue = :cue.text, verb = :verb.text}}

Rule: Pi
Priority: 10
(({{PremiseIndicator}}):cue):m
-->
:m.PremiseMacro = {{kind = "Pi", indicatorText = :m.text, cue = :cue.text}}
"""


@lru_cache(maxsize=None)
def builtin_phases(gap: int = DEFAULT_GAP) -> tuple[Phase, ...]:
    if gap < 0:
        raise ValueError("macro gap must be >= 0")
    return tuple(parse_rules(MACRO_SOURCE.format(gap=gap)))


def _resolve(doc: Document) -> None:
    claims = doc.get(CLAIM_MACRO)
    premises = doc.get(PREMISE_MACRO)
    drop: set[int] = set()

    elof_premise = {p.span.start: p for p in premises if p.features["kind"] == MacroKind.ElOfCnbCw_Premise}
    for c in claims:
        if c.features["kind"] != MacroKind.ElOfCnbCw_Claim:
            continue
        p = elof_premise.get(c.span.start)
        if p is None:
            continue
        if c.features.get("verb"):
            log.info("%s: %r read as claim cue (verb is claim-related)", doc.id, c.features["indicatorText"])
            drop.add(p.id)
        else:
            log.info("%s: %r read as premise cue (verb is premise-related)", doc.id, p.features["indicatorText"])
            drop.add(c.id)

    conj_starts = {t.span.start for t in doc.tokens if t.pos is Pos.CONJ}
    token_at = {t.span.start: t for t in doc.tokens}
    for m in claims + premises:
        if m.features["kind"] not in (MacroKind.Ci, MacroKind.Pi):
            continue
        tok = token_at.get(m.span.start)
        if tok is not None and tok.span == m.span and m.span.start in conj_starts:
            drop.add(m.id)

    if drop:
        doc.annotations = [a for a in doc.annotations if a.id not in drop]


def annotate_macros(doc: Document, gap: int = DEFAULT_GAP) -> Document:
    """(Re)compute ClaimMacro and PremiseMacro annotations on `doc`.

    Needs promoted gazetteer annotations; POS tags are used to recognise
    conjunction readings of single-word indicators.
    """
    doc.annotations = [a for a in doc.annotations if a.type not in (CLAIM_MACRO, PREMISE_MACRO)]
    for phase in builtin_phases(gap):
        run_phase(doc, phase)
    _resolve(doc)
    return doc


def match_claim_macros(doc: Document, gap: int = DEFAULT_GAP) -> list[Annotation]:
    annotate_macros(doc, gap)
    return doc.get(CLAIM_MACRO)


def match_premise_macros(doc: Document, gap: int = DEFAULT_GAP) -> list[Annotation]:
    annotate_macros(doc, gap)
    return doc.get(PREMISE_MACRO)
