"""Claim/premise extraction per sentence and assembly into arguments.

Per sentence, a coordinating conjunction (CC) not used by any macro is the
pivot between claim and premise text. Without a CC the macro offsets
themselves delimit the parts: when a sentence holds both a claim macro and
a premise macro, the later of the two starts the second part.

`words[a, b)` is the token range between two positions with leading and
trailing punctuation trimmed. The far edge of a part that starts after the
pivot is the end of the macro's clause: the next CC, `;` or the sentence
terminal at or after the macro's last token.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from .kb.model import Assertion, ConceptAssertion, Literal, RoleAssertion
from .patterns.macros import CLAIM_MACRO, PREMISE_MACRO
from .text_model import Annotation, Document, Pos, Sentence, Span, TokenKind

log = logging.getLogger(__name__)

STRICT = "strict"
EXTENDED = "extended"


@dataclass(frozen=True)
class MacroRef:
    kind: str
    span: Span
    text: str


@dataclass(frozen=True)
class Claim:
    span: Span
    text: str
    indicator: MacroRef
    sentence: int


@dataclass(frozen=True)
class Premise:
    span: Span
    text: str
    indicator: MacroRef
    sentence: int


class OrderClass(str, Enum):
    PC = "PC"
    CP = "CP"
    CLAIM_PREMISE = "ClaimPremise"


@dataclass(frozen=True)
class Argument:
    id: str
    claim: Claim
    premises: tuple[Premise, ...]
    order: OrderClass

    def __post_init__(self) -> None:
        if not self.premises:
            raise ValueError(f"argument {self.id} needs at least one premise")


# ---------------------------------------------------------------------------
# Sentence-level extraction

@dataclass
class _SentenceView:
    doc: Document
    index: int
    sentence: Sentence
    claim_macros: list[tuple[int, int, Annotation]]    # (first token, stop token, macro)
    premise_macros: list[tuple[int, int, Annotation]]
    cc: list[int]
    terminal: int   # local index of the terminal token, or the token count

    @property
    def tokens(self):
        return self.doc.sentence_tokens(self.sentence)

    def is_boundary(self, i: int) -> bool:
        return i >= self.terminal or i in self.cc or self.tokens[i].surface == ";"

    def clause_end(self, stop: int) -> int:
        j = stop
        while not self.is_boundary(j):
            j += 1
        return j

    def words(self, a: int, b: int) -> Span | None:
        toks = self.tokens
        a, b = min(a, b), max(a, b)
        b = min(b, self.terminal)
        while a < b and toks[a].kind is TokenKind.PUNCT:
            a += 1
        while b > a and toks[b - 1].kind is TokenKind.PUNCT:
            b -= 1
        if a >= b:
            return None
        return Span(toks[a].span.start, toks[b - 1].span.end)


def _view(doc: Document, index: int) -> _SentenceView:
    sentence = doc.sentences[index]
    toks = doc.sentence_tokens(sentence)
    starts = {t.span.start: i for i, t in enumerate(toks)}
    ends = {t.span.end: i + 1 for i, t in enumerate(toks)}

    def local(types: str) -> list[tuple[int, int, Annotation]]:
        out = []
        for ann in doc.get(types):
            if not sentence.span.contains(ann.span):
                continue
            if ann.span.start in starts and ann.span.end in ends:
                out.append((starts[ann.span.start], ends[ann.span.end], ann))
        return out

    claims = local(CLAIM_MACRO)
    premises = local(PREMISE_MACRO)
    covered = {i for first, stop, _ in claims + premises for i in range(first, stop)}
    cc = [i for i, t in enumerate(toks) if t.pos is Pos.CONJ and i not in covered]
    terminal = len(toks)
    if len(sentence.terminal):
        terminal = next(i for i, t in enumerate(toks) if t.span == sentence.terminal)
    return _SentenceView(doc, index, sentence, claims, premises, cc, terminal)


def _ref(doc: Document, ann: Annotation) -> MacroRef:
    return MacroRef(ann.features.get("kind", ""), ann.span, doc.slice(ann.span))


def mine_sentence(sentence_index: int, doc: Document, mode: str = EXTENDED) -> tuple[Claim | None, Premise | None]:
    """Claim and premise of one sentence; see the module docstring."""
    if mode not in (STRICT, EXTENDED):
        raise ValueError(f"unknown mode {mode!r}")
    v = _view(doc, sentence_index)
    claim_span = premise_span = None
    claim_macro = premise_macro = None

    if v.cc and v.claim_macros:
        cc = v.cc[0]
        first, stop, claim_macro = v.claim_macros[0]
        if first <= cc:
            claim_span = v.words(first, cc)
            after = [m for m in v.premise_macros if m[0] > cc]
            if after:
                _, p_stop, premise_macro = after[0]
                premise_span = v.words(cc + 1, v.clause_end(p_stop))
        else:
            claim_span = v.words(cc + 1, v.clause_end(stop))
            before = [m for m in v.premise_macros if m[0] < cc]
            if before:
                p_first, _, premise_macro = before[0]
                premise_span = v.words(p_first, cc)
    elif v.cc and mode == STRICT:
        pass
    elif v.claim_macros:
        c_first, c_stop, claim_macro = v.claim_macros[0]
        claim_span = v.words(c_first, v.terminal)
        if v.premise_macros:
            p_first, _, pm = v.premise_macros[0]
            if p_first < c_first:
                premise_macro = pm
                premise_span = v.words(p_first, c_first)
            elif p_first >= c_stop:
                premise_macro = pm
                claim_span = v.words(c_first, p_first)
                premise_span = v.words(p_first, v.terminal)
    elif v.premise_macros:
        p_first, _, premise_macro = v.premise_macros[0]
        premise_span = v.words(p_first, v.terminal)

    claim = premise = None
    if claim_span is not None:
        claim = Claim(claim_span, doc.slice(claim_span), _ref(doc, claim_macro), sentence_index)
    if premise_span is not None:
        premise = Premise(premise_span, doc.slice(premise_span), _ref(doc, premise_macro), sentence_index)
    return claim, premise


def mine_document(doc: Document, mode: str = EXTENDED) -> list[tuple[Claim | None, Premise | None]]:
    """Run `mine_sentence` on every sentence and record Claim/Premise annotations."""
    doc.annotations = [a for a in doc.annotations if a.type not in ("Claim", "Premise")]
    results = []
    for i in range(len(doc.sentences)):
        claim, premise = mine_sentence(i, doc, mode)
        for part, name in ((claim, "Claim"), (premise, "Premise")):
            if part is not None:
                doc.add(name, part.span, {"kind": part.indicator.kind, "indicatorText": part.indicator.text})
        results.append((claim, premise))
    return results


# ---------------------------------------------------------------------------
# Argument assembly

def _order_class(claim: Claim, premises: list[Premise]) -> OrderClass:
    if any(p.span.start < claim.span.start for p in premises):
        return OrderClass.PC
    if any(p.sentence > claim.sentence and p.span.start == p.indicator.span.start for p in premises):
        return OrderClass.CLAIM_PREMISE
    return OrderClass.CP


def assemble_arguments(doc: Document, window: int = 2, mode: str = EXTENDED,
                       mined: list[tuple[Claim | None, Premise | None]] | None = None) -> list[Argument]:
    """Group mined parts into arguments.

    Each premise joins the nearest claim at most `window` sentences away;
    at equal distance the same sentence, then a preceding one, is
    preferred. Claims that end up without premises, and premises with no
    claim in reach, do not form arguments.
    """
    if mined is None:
        mined = mine_document(doc, mode)
    claims = [c for c, _ in mined if c is not None]
    attached: dict[int, list[Premise]] = {i: [] for i in range(len(claims))}
    for _, premise in mined:
        if premise is None:
            continue
        best = None
        for ci, claim in enumerate(claims):
            distance = abs(claim.sentence - premise.sentence)
            if distance > window:
                continue
            key = (distance, claim.sentence > premise.sentence, ci)
            if best is None or key < best[0]:
                best = (key, ci)
        if best is None:
            log.info("%s: premise %r has no claim within %d sentences; dropped", doc.id, premise.text, window)
            continue
        attached[best[1]].append(premise)

    arguments = []
    for ci, claim in enumerate(claims):
        premises = attached[ci]
        if not premises:
            continue
        premises.sort(key=lambda p: p.span.start)
        arg_id = f"{doc.id}_arg{len(arguments) + 1}"
        arguments.append(Argument(arg_id, claim, tuple(premises), _order_class(claim, premises)))
    return arguments


def arguments_to_assertions(arguments: list[Argument], doc_id: str | None = None) -> list[Assertion]:
    """ABox assertions for mined arguments.

    Individuals are named `<doc>_argN`, `<doc>_cN` (claim of argument N)
    and `<doc>_pK` (K-th premise in the document).
    """
    out: list[Assertion] = []
    premise_counter: dict[str, int] = {}
    for arg in arguments:
        prefix, _, number = arg.id.rpartition("_arg")
        prefix = doc_id or prefix
        a = arg.id
        c = f"{prefix}_c{number}"
        out.append(ConceptAssertion(a, "Argument"))
        if arg.order is OrderClass.CLAIM_PREMISE:
            out.append(ConceptAssertion(a, "ClaimPremiseArgument"))
        out += [
            ConceptAssertion(c, "Claim"),
            RoleAssertion(a, "hasClaim", c),
            RoleAssertion(c, "hasText", Literal(arg.claim.text)),
            RoleAssertion(c, "hasClaimIndicator", Literal(arg.claim.indicator.text)),
        ]
        parts: list[tuple[int, str]] = [(arg.claim.span.start, c)]
        for premise in arg.premises:
            premise_counter[prefix] = premise_counter.get(prefix, 0) + 1
            p = f"{prefix}_p{premise_counter[prefix]}"
            out += [
                ConceptAssertion(p, "Premise"),
                RoleAssertion(a, "hasPremise", p),
                RoleAssertion(p, "hasText", Literal(premise.text)),
                RoleAssertion(p, "hasPremiseIndicator", Literal(premise.indicator.text)),
            ]
            parts.append((premise.span.start, p))
        parts.sort()
        for i, (_, x) in enumerate(parts):
            for _, y in parts[i + 1:]:
                out.append(RoleAssertion(x, "before", y))
    return out
