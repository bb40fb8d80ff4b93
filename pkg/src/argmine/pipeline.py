"""Wiring of the annotation stages into one per-document pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .gazetteer import Gazetteer, annotate_lookups, load_gazetteer, promote_lookups
from .patterns import Phase, annotate_macros, parse_rules, run_phases
from .text_model import Document, Lexicon, make_document, pos_tag, read_list_file

VERB_TYPES = ("VerbRelatedToClaim", "VerbRelatedToPremise")


def data_path(*parts: str) -> Path:
    return Path(str(resources.files("argmine").joinpath("data", *parts)))


DEFAULT_GAZETTEER = data_path("gazetteer", "lists.def")
DEFAULT_CONJUNCTIONS = data_path("lexicon", "conjunctions.lst")


@dataclass(frozen=True)
class PipelineConfig:
    gazetteer: Path = DEFAULT_GAZETTEER
    rules: tuple[Path, ...] = ()
    macro_gap: int = 3
    window: int = 2
    strict: bool = False
    eval_mode: str = "strict"

    def __post_init__(self) -> None:
        if self.macro_gap < 0:
            raise ValueError("macro gap must be >= 0")
        if self.window < 0:
            raise ValueError("window must be >= 0")
        if self.eval_mode not in ("strict", "lenient"):
            raise ValueError(f"unknown evaluation mode {self.eval_mode!r}")

    @property
    def mode(self) -> str:
        return "strict" if self.strict else "extended"


def lexicon_from_gazetteer(gaz: Gazetteer, conjunction_file: str | Path = DEFAULT_CONJUNCTIONS) -> Lexicon:
    """Verb lemmas are the single-word entries of the verb lists."""
    verbs = {e.term[0] for e in gaz if e.major_type in VERB_TYPES and len(e.term) == 1}
    conjunctions = {c.lower() for c in read_list_file(conjunction_file)}
    return Lexicon(frozenset(verbs), frozenset(conjunctions))


@dataclass
class Resources:
    gazetteer: Gazetteer
    lexicon: Lexicon
    extra_phases: list[Phase] = field(default_factory=list)


def load_resources(config: PipelineConfig) -> Resources:
    gaz = load_gazetteer(config.gazetteer)
    phases: list[Phase] = []
    for path in config.rules:
        phases.extend(parse_rules(Path(path).read_text(encoding="utf-8")))
    return Resources(gaz, lexicon_from_gazetteer(gaz), phases)


@lru_cache(maxsize=1)
def default_resources() -> Resources:
    return load_resources(PipelineConfig())


def annotate_document(doc_id: str, text: str, res: Resources | None = None, macro_gap: int = 3) -> Document:
    """Tokenize, tag, look up, promote and match macros (plus any extra phases)."""
    res = res or default_resources()
    doc = make_document(doc_id, text)
    doc.tokens = pos_tag(doc.tokens, res.lexicon)
    annotate_lookups(doc, res.gazetteer)
    promote_lookups(doc)
    annotate_macros(doc, macro_gap)
    run_phases(doc, res.extra_phases)
    return doc
