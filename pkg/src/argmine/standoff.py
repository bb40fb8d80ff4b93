"""Standoff annotation files.

One document per file: a `#doc <id>` header, then one line per annotation,
`TYPE<TAB>start<TAB>end<TAB>name=value;...`. Offsets are code points into
the document text, which lives next to it as `<id>.txt`. Feature names and
values are percent-escaped so `;`, `=`, tabs and newlines survive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import quote, unquote

from .text_model import Annotation, Span

ANN_SUFFIX = ".ann"
TEXT_SUFFIX = ".txt"


class StandoffError(ValueError):
    def __init__(self, path: str, line: int, reason: str) -> None:
        super().__init__(f"{path}:{line}: {reason}")
        self.path = path
        self.line = line
        self.reason = reason


@dataclass(frozen=True, order=True)
class StandoffRecord:
    start: int
    end: int
    type: str
    features: tuple[tuple[str, str], ...] = ()

    @property
    def span(self) -> Span:
        return Span(self.start, self.end)

    @classmethod
    def from_annotation(cls, ann: Annotation) -> "StandoffRecord":
        feats = tuple(sorted((str(k), str(v)) for k, v in ann.features.items()))
        return cls(ann.span.start, ann.span.end, ann.type, feats)


@dataclass
class StandoffDoc:
    id: str
    records: list[StandoffRecord] = field(default_factory=list)

    def of_type(self, type_: str) -> list[StandoffRecord]:
        return sorted(r for r in self.records if r.type == type_)


def _esc(s: str) -> str:
    return quote(s, safe=" !\"#$&'()*+,-./:<>?@[]^_`{|}~")


def format_standoff(doc: StandoffDoc) -> str:
    lines = [f"#doc {doc.id}"]
    for r in sorted(doc.records, key=lambda r: (r.start, -r.end, r.type, r.features)):
        feats = ";".join(f"{_esc(k)}={_esc(v)}" for k, v in r.features)
        lines.append(f"{r.type}\t{r.start}\t{r.end}\t{feats}")
    return "".join(line + "\n" for line in lines)


def parse_standoff(text: str, source: str = "<string>", doc_text: str | None = None) -> StandoffDoc:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#doc "):
        raise StandoffError(source, 1, "missing '#doc <id>' header")
    doc = StandoffDoc(lines[0][5:].strip())
    if not doc.id:
        raise StandoffError(source, 1, "empty document id")
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (3, 4):
            raise StandoffError(source, lineno, "expected TYPE, start, end and features separated by tabs")
        type_, start, end = parts[:3]
        try:
            s, e = int(start), int(end)
        except ValueError:
            raise StandoffError(source, lineno, "offsets must be integers") from None
        if s < 0 or e < s:
            raise StandoffError(source, lineno, f"invalid span [{s}, {e})")
        if doc_text is not None and e > len(doc_text):
            raise StandoffError(source, lineno, f"span [{s}, {e}) beyond text length {len(doc_text)}")
        feats = []
        if len(parts) == 4 and parts[3]:
            for item in parts[3].split(";"):
                name, sep, value = item.partition("=")
                if not sep:
                    raise StandoffError(source, lineno, f"feature {item!r} lacks '='")
                feats.append((unquote(name), unquote(value)))
        doc.records.append(StandoffRecord(s, e, type_, tuple(sorted(feats))))
    return doc


def document_records(annotations: list[Annotation], types: set[str] | None = None) -> list[StandoffRecord]:
    return [StandoffRecord.from_annotation(a) for a in annotations if types is None or a.type in types]


def read_standoff(path: str | Path, check_text: bool = True) -> tuple[StandoffDoc, str | None]:
    """Read an annotation file and, if present, its text file."""
    path = Path(path)
    text_path = path.with_suffix(TEXT_SUFFIX)
    doc_text = text_path.read_text(encoding="utf-8") if text_path.exists() else None
    doc = parse_standoff(path.read_text(encoding="utf-8"), str(path), doc_text if check_text else None)
    return doc, doc_text


def read_corpus_dir(directory: str | Path) -> dict[str, tuple[StandoffDoc, str | None]]:
    """All `.ann` files of a directory keyed by document id."""
    out: dict[str, tuple[StandoffDoc, str | None]] = {}
    for path in sorted(Path(directory).glob("*" + ANN_SUFFIX)):
        doc, text = read_standoff(path)
        out[doc.id] = (doc, text)
    return out
