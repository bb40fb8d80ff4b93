"""Document representation: character-offset spans, tokens, sentences and
standoff annotations, plus the rule-based splitter, tokenizer and the
closed-lexicon part-of-speech tagger used by the rest of the pipeline.

Offsets are Python string indices, i.e. Unicode code points.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Mapping


class UnknownLexicon(RuntimeError):
    """Raised when tagging is requested without a loaded lexicon."""


@dataclass(frozen=True, order=True)
class Span:
    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.end:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def contains(self, other: Span) -> bool:
        return self.start <= other.start and other.end <= self.end

    def overlaps(self, other: Span) -> bool:
        return self.start < other.end and other.start < self.end


class TokenKind(str, Enum):
    WORD = "Word"
    NUMBER = "Number"
    PUNCT = "Punct"


class Pos(str, Enum):
    VERB = "Verb"
    NOUN = "Noun"
    CONJ = "Conj"
    OTHER = "Other"


@dataclass(frozen=True)
class Token:
    span: Span
    surface: str
    kind: TokenKind
    pos: Pos | None = None
    # lexicon lemma, only set for tokens tagged as verbs
    lemma: str | None = None

    @property
    def norm(self) -> str:
        return self.surface.lower()


@dataclass(frozen=True)
class Sentence:
    span: Span
    token_start: int
    token_end: int
    terminal: Span

    @property
    def token_range(self) -> range:
        return range(self.token_start, self.token_end)


@dataclass(frozen=True)
class Annotation:
    id: int
    type: str
    span: Span
    features: Mapping[str, str] = field(default_factory=dict)

    def __hash__(self) -> int:
        return hash((self.id, self.type, self.span))


@dataclass
class Document:
    id: str
    text: str
    tokens: list[Token] = field(default_factory=list)
    sentences: list[Sentence] = field(default_factory=list)
    annotations: list[Annotation] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._next_id = max((a.id for a in self.annotations), default=0) + 1

    def add(self, type: str, span: Span, features: Mapping[str, str] | None = None) -> Annotation:
        if not type:
            raise ValueError("annotation type must be nonempty")
        if span.end > len(self.text):
            raise ValueError(f"span {span} outside document of length {len(self.text)}")
        ann = Annotation(self._next_id, type, span, dict(features or {}))
        self._next_id += 1
        self.annotations.append(ann)
        return ann

    def get(self, *types: str) -> list[Annotation]:
        """Annotations of the given types, sorted by span then id."""
        wanted = set(types)
        found = [a for a in self.annotations if a.type in wanted]
        return sorted(found, key=lambda a: (a.span.start, a.span.end, a.id))

    def slice(self, span: Span) -> str:
        return self.text[span.start:span.end]

    def sentence_tokens(self, sentence: Sentence) -> list[Token]:
        return self.tokens[sentence.token_start:sentence.token_end]


# ---------------------------------------------------------------------------
# Sentence splitting

ABBREVIATIONS = frozenset({"e.g.", "i.e.", "dr.", "vs."})
_TERMINATORS = ".?!"
_PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n")


def _is_abbreviation(text: str, dot: int) -> bool:
    if text[dot] != ".":
        return False
    start = dot
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    chunk = text[start:dot + 1].lstrip("([{\"'").lower()
    if chunk in ABBREVIATIONS:
        return True
    if chunk == "al.":
        prev = text[:start].rstrip().rsplit(None, 1)
        return bool(prev) and prev[-1].lower() == "et"
    return False


def _boundaries(text: str) -> Iterator[tuple[int, int]]:
    """Yield (sentence_end, terminal_start) pairs; equal values mean no terminal."""
    breaks = {m.start() for m in _PARAGRAPH_BREAK.finditer(text)}
    for i, ch in enumerate(text):
        if ch in _TERMINATORS:
            at_end = i + 1 == len(text) or text[i + 1].isspace()
            if at_end and not _is_abbreviation(text, i):
                yield i + 1, i
        elif i in breaks:
            yield i, i


def split_sentences(text: str) -> list[Sentence]:
    """Split text into sentences covering every non-whitespace character.

    A sentence ends at `.`, `?` or `!` followed by whitespace or the end of
    the text (unless the period closes a known abbreviation), or at a blank
    line. Trailing text without punctuation forms a final sentence whose
    terminal is the empty span at its end.

    Token ranges are left empty; `tokenize` fills them in.
    """
    sentences: list[Sentence] = []
    pos = 0

    def emit(end: int, terminal_start: int) -> None:
        start = pos
        while start < end and text[start].isspace():
            start += 1
        if start == end:
            return
        stop = end
        if terminal_start == end:
            while text[stop - 1].isspace():
                stop -= 1
            terminal_start = stop
        sentences.append(Sentence(Span(start, stop), 0, 0, Span(terminal_start, stop)))

    for end, terminal_start in _boundaries(text):
        if end <= pos:
            continue
        emit(end, terminal_start)
        pos = end
    if text[pos:].strip():
        emit(len(text), len(text))
    return sentences


# ---------------------------------------------------------------------------
# Tokenization

_TOKEN_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*|\S")


def tokenize(text: str, sentences: list[Sentence]) -> tuple[list[Token], list[Sentence]]:
    """Tokenize each sentence; returns the tokens and the sentences with
    their token ranges filled in."""
    tokens: list[Token] = []
    indexed: list[Sentence] = []
    for sentence in sentences:
        first = len(tokens)
        for m in _TOKEN_RE.finditer(text, sentence.span.start, sentence.span.end):
            surface = m.group()
            if surface[0].isalnum():
                kind = TokenKind.NUMBER if surface.isdigit() else TokenKind.WORD
            else:
                kind = TokenKind.PUNCT
            tokens.append(Token(Span(m.start(), m.end()), surface, kind))
        indexed.append(replace(sentence, token_start=first, token_end=len(tokens)))
    return tokens, indexed


def make_document(doc_id: str, text: str) -> Document:
    """Split and tokenize `text` into a fresh document (no POS tags yet)."""
    tokens, sentences = tokenize(text, split_sentences(text))
    return Document(doc_id, text, tokens, sentences)


# ---------------------------------------------------------------------------
# Lexicon and POS tagging

def read_list_file(path: str | Path) -> list[str]:
    """Read a `.lst` file: one entry per line, `#` comments, blank lines skipped."""
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                entries.append(line)
    return entries


@dataclass(frozen=True)
class Lexicon:
    verbs: frozenset[str]
    conjunctions: frozenset[str]

    @classmethod
    def load(cls, verb_files: Iterable[str | Path], conjunction_file: str | Path) -> Lexicon:
        verbs = set()
        for path in verb_files:
            verbs.update(v.lower() for v in read_list_file(path))
        conjunctions = {c.lower() for c in read_list_file(conjunction_file)}
        return cls(frozenset(verbs), frozenset(conjunctions))


def lemma_candidates(word: str) -> list[str]:
    """Candidate lemmas for an inflected word, most literal first."""
    w = word.lower()
    out = [w]

    def add(stem: str) -> None:
        if len(stem) >= 2 and stem not in out:
            out.append(stem)

    if w.endswith("ies") or w.endswith("ied"):
        add(w[:-3] + "y")
    if w.endswith("es"):
        add(w[:-2])
    if w.endswith("s") and not w.endswith("ss"):
        add(w[:-1])
    for suffix in ("ed", "ing"):
        if w.endswith(suffix):
            stem = w[:-len(suffix)]
            add(stem)
            add(stem + "e")
            if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] not in "aeiou":
                add(stem[:-1])
    return out


def lemmatize(word: str, verbs: frozenset[str]) -> str | None:
    for candidate in lemma_candidates(word):
        if candidate in verbs:
            return candidate
    return None


def pos_tag(tokens: list[Token], lexicon: Lexicon | None) -> list[Token]:
    if lexicon is None:
        raise UnknownLexicon("pos_tag needs a loaded lexicon")
    tagged = []
    for tok in tokens:
        lemma = None
        if tok.kind is not TokenKind.WORD:
            pos = Pos.OTHER
        elif tok.norm in lexicon.conjunctions:
            pos = Pos.CONJ
        else:
            lemma = lemmatize(tok.surface, lexicon.verbs)
            pos = Pos.VERB if lemma else Pos.NOUN
        tagged.append(replace(tok, pos=pos, lemma=lemma))
    return tagged
