"""Line-oriented ABox text format.

    ind : Concept
    (a, b) : role
    (a, "text") : role

On the data roles a quoted object is a literal; elsewhere it is an
individual whose name needs quoting. Individuals whose names are not plain
identifiers are written as `<"name">`. `#` starts a comment. A line
`#@derived` switches to facts that were inferred rather than stated, and
`#@asserted` switches back.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path

from .model import (
    DATA_ROLES, Assertion, ConceptAssertion, Literal, MalformedAssertion, RoleAssertion,
    TBoxAxiom, assertion_key, check_assertion,
)
from .reasoner import KnowledgeBase
from .tbox import ParseError, builtin_tbox

_BARE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*")
_STRING = r'"(?:[^"\\]|\\.)*"'
_TERM = rf'(?:{_STRING}|<{_STRING}>|[^\s(),:"<>#]+)'
_CONCEPT_LINE = re.compile(rf"^({_TERM})\s*:\s*([A-Za-z_][A-Za-z0-9_]*)$")
_ROLE_LINE = re.compile(rf"^\(\s*({_TERM})\s*,\s*({_TERM})\s*\)\s*:\s*([A-Za-z_][A-Za-z0-9_]*)$")

DERIVED_PRAGMA = "#@derived"
ASSERTED_PRAGMA = "#@asserted"


def _name(term: str) -> str:
    if _BARE.fullmatch(term):
        return term
    return "<" + json.dumps(term, ensure_ascii=False) + ">"


def format_assertion(a: Assertion) -> str:
    if isinstance(a, ConceptAssertion):
        return f"{_name(a.individual)} : {a.concept}"
    if isinstance(a.object, Literal):
        obj = json.dumps(a.object.value, ensure_ascii=False)
    else:
        obj = _name(a.object)
    return f"({_name(a.subject)}, {obj}) : {a.role}"


def format_abox(kb: KnowledgeBase, with_derived: bool = False) -> str:
    lines = [format_assertion(a) for a in sorted(kb.asserted, key=assertion_key)]
    if with_derived:
        derived = sorted(kb.derived, key=assertion_key)
        if derived:
            lines.append(DERIVED_PRAGMA)
            lines += [format_assertion(a) for a in derived]
    return "".join(line + "\n" for line in lines)


def _individual(tok: str, lineno: int) -> str:
    if tok.startswith("<"):
        tok = tok[1:-1]
    if tok.startswith('"'):
        try:
            return json.loads(tok)
        except json.JSONDecodeError as exc:
            raise ParseError(lineno, f"bad string {tok}: {exc.msg}") from None
    return tok


def parse_assertion(line: str, lineno: int = 1) -> Assertion:
    m = _CONCEPT_LINE.match(line)
    if m:
        a: Assertion = ConceptAssertion(_individual(m.group(1), lineno), m.group(2))
    else:
        m = _ROLE_LINE.match(line)
        if not m:
            raise ParseError(lineno, f"not an assertion: {line!r}")
        subj, obj, role = m.groups()
        if obj.startswith('"') and role in DATA_ROLES:
            value: str | Literal = Literal(_individual(obj, lineno))
        else:
            value = _individual(obj, lineno)
        a = RoleAssertion(_individual(subj, lineno), role, value)
    try:
        return check_assertion(a)
    except MalformedAssertion as exc:
        raise ParseError(lineno, str(exc)) from None


def parse_abox_text(text: str, tbox: list[TBoxAxiom] | None = None) -> KnowledgeBase:
    kb = KnowledgeBase(tbox=builtin_tbox() if tbox is None else list(tbox))
    derived = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line == DERIVED_PRAGMA:
            derived = True
            continue
        if line == ASSERTED_PRAGMA:
            derived = False
            continue
        if not line or line.startswith("#"):
            continue
        a = parse_assertion(line, lineno)
        if derived:
            kb.add_derived(a)
        else:
            kb.assert_fact(a)
    return kb


def parse_abox(path: str | Path, tbox: list[TBoxAxiom] | None = None) -> KnowledgeBase:
    return parse_abox_text(Path(path).read_text(encoding="utf-8"), tbox)


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def export_abox(kb: KnowledgeBase, path: str | Path, with_derived: bool = False) -> None:
    write_atomic(path, format_abox(kb, with_derived))
