"""Term-list lookup over tokenized documents.

Lists are plain `.lst` files bound to a majorType by a `.def` index. Terms
are stored as lowercase token sequences in a trie; matching is
case-insensitive, token-aligned and longest-match per majorType.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .text_model import Document, Span, Token, read_list_file, split_sentences, tokenize

log = logging.getLogger(__name__)

LOOKUP = "Lookup"
# Lookups strictly inside one of these are dropped: the words of a multiword
# cue ("as a result", "according to") are not independent cues.
DOMINANT_TYPES = frozenset({"ClaimIndicator", "PremiseIndicator"})

_END = ""  # trie key marking the end of a term; never a token surface


class MissingFile(FileNotFoundError):
    def __init__(self, path: str | Path):
        super().__init__(f"missing gazetteer file: {path}")
        self.path = str(path)


class GazetteerFormatError(ValueError):
    pass


@dataclass(frozen=True)
class GazetteerEntry:
    term: tuple[str, ...]
    major_type: str
    minor_type: str | None = None

    def __post_init__(self) -> None:
        if not self.term or not self.major_type:
            raise ValueError("gazetteer entries need a term and a majorType")


def normalize_term(term: str) -> tuple[str, ...]:
    tokens, _ = tokenize(term, split_sentences(term))
    return tuple(t.norm for t in tokens)


@dataclass
class Gazetteer:
    bindings: list[tuple[str, str, str | None]] = field(default_factory=list)
    _trie: dict = field(default_factory=dict, repr=False)

    def add(self, term: Iterable[str], major_type: str, minor_type: str | None = None) -> None:
        entry = GazetteerEntry(tuple(t.lower() for t in term), major_type, minor_type)
        node = self._trie
        for tok in entry.term:
            node = node.setdefault(tok, {})
        types = node.setdefault(_END, {})
        if major_type in types:
            log.info("duplicate gazetteer entry %r for %s; last binding wins",
                     " ".join(entry.term), major_type)
        types[major_type] = minor_type

    def __iter__(self) -> Iterator[GazetteerEntry]:
        stack: list[tuple[tuple[str, ...], dict]] = [((), self._trie)]
        while stack:
            prefix, node = stack.pop()
            for key, child in sorted(node.items(), reverse=True):
                if key == _END:
                    for major, minor in sorted(child.items()):
                        yield GazetteerEntry(prefix, major, minor)
                else:
                    stack.append((prefix + (key,), child))

    def __len__(self) -> int:
        return sum(1 for _ in self)

    def major_types(self) -> set[str]:
        return {e.major_type for e in self}

    def terms_of(self, major_type: str) -> list[tuple[str, ...]]:
        return sorted(e.term for e in self if e.major_type == major_type)

    def matches_at(self, tokens: list[Token], i: int, stop: int) -> dict[str, tuple[int, str | None]]:
        """Longest match per majorType for terms starting at token `i`.

        Returns majorType -> (end token index, minorType). A verb token may
        match by its surface or by its lexicon lemma.
        """
        found: dict[str, tuple[int, str | None]] = {}
        frontier = [self._trie]
        j = i
        while frontier and j < stop:
            tok = tokens[j]
            keys = {tok.norm}
            if tok.lemma:
                keys.add(tok.lemma)
            nxt = []
            for node in frontier:
                for key in keys:
                    child = node.get(key)
                    if child is not None:
                        nxt.append(child)
            j += 1
            for node in nxt:
                for major, minor in node.get(_END, {}).items():
                    found[major] = (j, minor)
            frontier = nxt
        return found


def load_gazetteer(def_path: str | Path) -> Gazetteer:
    """Load every list named in a `.def` index.

    Each non-comment line is `file.lst:MajorType` or
    `file.lst:MajorType:MinorType`; list paths are relative to the index.
    """
    def_path = Path(def_path)
    if not def_path.is_file():
        raise MissingFile(def_path)
    gaz = Gazetteer()
    for lineno, line in enumerate(def_path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(":")
        if len(parts) not in (2, 3) or not all(parts):
            raise GazetteerFormatError(f"{def_path}:{lineno}: expected file.lst:MajorType[:MinorType]")
        list_path = def_path.parent / parts[0]
        if not list_path.is_file():
            raise MissingFile(list_path)
        major = parts[1]
        minor = parts[2] if len(parts) == 3 else None
        gaz.bindings.append((parts[0], major, minor))
        for term in read_list_file(list_path):
            tokens = normalize_term(term)
            if tokens:
                gaz.add(tokens, major, minor)
    return gaz


def annotate_lookups(doc: Document, gazetteer: Gazetteer) -> Document:
    """Add one Lookup per longest list match (per majorType) in `doc`."""
    existing = {(a.span, a.features.get("majorType")) for a in doc.get(LOOKUP)}
    matches: list[tuple[Span, str, str | None]] = []
    for sentence in doc.sentences:
        # per-type resume point: a type cannot match inside its own earlier match
        resume: dict[str, int] = {}
        for i in sentence.token_range:
            for major, (end, minor) in sorted(gazetteer.matches_at(doc.tokens, i, sentence.token_end).items()):
                if i < resume.get(major, 0):
                    continue
                resume[major] = end
                span = Span(doc.tokens[i].span.start, doc.tokens[end - 1].span.end)
                matches.append((span, major, minor))

    dominant = [span for span, major, _ in matches if major in DOMINANT_TYPES]
    for span, major, minor in matches:
        if any(d != span and d.contains(span) for d in dominant):
            continue
        if (span, major) in existing:
            continue
        features = {"majorType": major}
        if minor:
            features["minorType"] = minor
        doc.add(LOOKUP, span, features)
    return doc


def promote_lookups(doc: Document) -> Document:
    """Give every Lookup a sibling annotation named after its majorType."""
    present = {(a.type, a.span) for a in doc.annotations}
    for lookup in doc.get(LOOKUP):
        major = lookup.features["majorType"]
        if (major, lookup.span) in present:
            continue
        features = {k: v for k, v in lookup.features.items() if k == "minorType"}
        doc.add(major, lookup.span, features)
        present.add((major, lookup.span))
    return doc
