"""Rule language for cascaded annotation patterns.

A rule file is a sequence of phases; each phase holds pattern/action rules
that match sequences of annotations within a sentence::

    Phase: ClaimMacros
    Input: ClaimIndicator PeopleInvolved
    Gap: 3

    Rule: CibPe
    Priority: 40
    (({ClaimIndicator}):ci ({PeopleInvolved}):pe):m
    -->
    :m.ClaimMacro = {kind = "CibPe", indicatorText = :m.text}

An element is a parenthesised alternation of `{Type}` or
`{Type.feature == "value", ...}` blocks, optionally followed by a
quantifier (`?`, `*`, `+`) and one or more `:label` bindings. A
parenthesised group of elements passes its label on to every member.
`Gap` bounds how many unmatched tokens may sit between consecutive
elements. Rules that appear before any `Phase:` header go into an implicit
phase named `main`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Union


class RuleSyntaxError(SyntaxError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class UnknownBinding(RuleSyntaxError):
    pass


class Quantifier(str, Enum):
    ONE = ""
    OPTIONAL = "?"
    STAR = "*"
    PLUS = "+"


@dataclass(frozen=True)
class Constraint:
    type: str
    features: tuple[tuple[str, str], ...] = ()

    def accepts(self, ann_type: str, features) -> bool:
        return ann_type == self.type and all(features.get(k) == v for k, v in self.features)


@dataclass(frozen=True)
class PatternElement:
    constraints: tuple[Constraint, ...]
    quantifier: Quantifier = Quantifier.ONE
    bindings: tuple[str, ...] = ()

    def accepts(self, ann_type: str, features) -> bool:
        return any(c.accepts(ann_type, features) for c in self.constraints)


@dataclass(frozen=True)
class LabelText:
    """Feature value taken from the text covered by a bound label."""
    label: str


FeatureValue = Union[str, LabelText]


@dataclass(frozen=True)
class Action:
    label: str
    type: str
    features: tuple[tuple[str, FeatureValue], ...] = ()


@dataclass(frozen=True)
class Rule:
    name: str
    priority: int
    lhs: tuple[PatternElement, ...]
    rhs: tuple[Action, ...]

    def labels(self) -> set[str]:
        return {b for el in self.lhs for b in el.bindings}


@dataclass(frozen=True)
class Phase:
    name: str
    input_types: tuple[str, ...]
    rules: tuple[Rule, ...]
    gap: int = 0


# ---------------------------------------------------------------------------
# Lexer

_LEX = re.compile(
    r"""
    (?P<ws>[ \t\r]+) |
    (?P<nl>\n) |
    (?P<comment>//[^\n]*|\#[^\n]*) |
    (?P<kw>(?:Phase|Input|Gap|Rule|Priority):) |
    (?P<arrow>-->) |
    (?P<eqeq>==) |
    (?P<string>"(?:[^"\\\n]|\\.)*") |
    (?P<int>-?\d+) |
    (?P<ident>[A-Za-z_][A-Za-z0-9_]*) |
    (?P<punct>[(){}|,.=:?*+])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    value: str
    line: int


def _lex(source: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line = 1
    pos = 0
    while pos < len(source):
        m = _LEX.match(source, pos)
        if m is None:
            raise RuleSyntaxError(line, f"unexpected character {source[pos]!r}")
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line += 1
        elif kind == "kw":
            toks.append(_Tok("kw", text[:-1], line))
        elif kind == "punct":
            toks.append(_Tok(text, text, line))
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, text, line))
        pos = m.end()
    toks.append(_Tok("eof", "", line))
    return toks


# ---------------------------------------------------------------------------
# Parser

class _Parser:
    def __init__(self, source: str):
        self.toks = _lex(source)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def at(self, kind: str, value: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (value is None or t.value == value)

    def take(self, kind: str, value: str | None = None) -> _Tok:
        if not self.at(kind, value):
            want = value or kind
            got = self.tok.value or self.tok.kind
            raise RuleSyntaxError(self.tok.line, f"expected {want!r}, found {got!r}")
        t = self.tok
        self.i += 1
        return t

    def parse(self) -> list[Phase]:
        phases: list[Phase] = []
        implicit: list[Rule] = []
        while self.at("kw", "Rule"):
            implicit.append(self.rule(implicit))
        if implicit:
            phases.append(_make_phase("main", None, 0, implicit, 1))
        while not self.at("eof"):
            phases.append(self.phase())
        return phases

    def phase(self) -> Phase:
        line = self.take("kw", "Phase").line
        name = self.take("ident").value
        inputs = None
        gap = 0
        if self.at("kw", "Input"):
            self.take("kw", "Input")
            inputs = []
            while self.at("ident"):
                inputs.append(self.take("ident").value)
        if self.at("kw", "Gap"):
            self.take("kw", "Gap")
            gap_tok = self.take("int")
            gap = int(gap_tok.value)
            if gap < 0:
                raise RuleSyntaxError(gap_tok.line, "Gap must be >= 0")
        rules = []
        while self.at("kw", "Rule"):
            rules.append(self.rule(rules))
        return _make_phase(name, inputs, gap, rules, line)

    def rule(self, siblings: list[Rule]) -> Rule:
        line = self.take("kw", "Rule").line
        name = self.take("ident").value
        if any(r.name == name for r in siblings):
            raise RuleSyntaxError(line, f"duplicate rule name {name}")
        priority = 0
        if self.at("kw", "Priority"):
            self.take("kw", "Priority")
            priority = int(self.take("int").value)
        lhs: list[PatternElement] = []
        while self.at("("):
            lhs.extend(self.item())
        if not lhs:
            raise RuleSyntaxError(self.tok.line, f"rule {name} has an empty pattern")
        self.take("arrow")
        rhs = [self.action()]
        while self.at(","):
            self.take(",")
            rhs.append(self.action())
        rule = Rule(name, priority, tuple(lhs), tuple(rhs))
        _check_rule(rule, line)
        return rule

    def item(self) -> list[PatternElement]:
        open_line = self.take("(").line
        if self.at("{"):
            blocks = [self.block()]
            while self.at("|"):
                self.take("|")
                blocks.append(self.block())
            self.take(")")
            quant = Quantifier.ONE
            for q in ("?", "*", "+"):
                if self.at(q):
                    self.take(q)
                    quant = Quantifier(q)
                    break
            return [PatternElement(tuple(blocks), quant, self.labels())]
        members: list[PatternElement] = []
        while self.at("("):
            members.extend(self.item())
        if not members:
            raise RuleSyntaxError(open_line, "empty group")
        self.take(")")
        if any(self.at(q) for q in ("?", "*", "+")):
            raise RuleSyntaxError(self.tok.line, "quantifiers apply to single elements, not groups")
        extra = self.labels()
        return [PatternElement(m.constraints, m.quantifier, m.bindings + tuple(l for l in extra if l not in m.bindings))
                for m in members]

    def labels(self) -> tuple[str, ...]:
        out: list[str] = []
        while self.at(":") and self.toks[self.i + 1].kind == "ident":
            self.take(":")
            label = self.take("ident").value
            if label not in out:
                out.append(label)
        return tuple(out)

    def block(self) -> Constraint:
        self.take("{")
        ann_type = self.take("ident").value
        features: list[tuple[str, str]] = []
        if self.at("."):
            features.append(self.feature_test(ann_type))
            while self.at(","):
                self.take(",")
                t = self.take("ident")
                if t.value != ann_type:
                    raise RuleSyntaxError(t.line, f"all tests in a block must refer to {ann_type}")
                features.append(self.feature_test(ann_type))
        self.take("}")
        return Constraint(ann_type, tuple(features))

    def feature_test(self, ann_type: str) -> tuple[str, str]:
        self.take(".")
        name = self.take("ident").value
        self.take("eqeq")
        return name, self.string()

    def string(self) -> str:
        return json.loads(self.take("string").value)

    def action(self) -> Action:
        self.take(":")
        label = self.take("ident").value
        self.take(".")
        ann_type = self.take("ident").value
        self.take("=")
        self.take("{")
        features: list[tuple[str, FeatureValue]] = []
        if not self.at("}"):
            features.append(self.assignment())
            while self.at(","):
                self.take(",")
                features.append(self.assignment())
        self.take("}")
        return Action(label, ann_type, tuple(features))

    def assignment(self) -> tuple[str, FeatureValue]:
        name = self.take("ident").value
        self.take("=")
        if self.at("string"):
            return name, self.string()
        self.take(":")
        label = self.take("ident").value
        self.take(".")
        attr = self.take("ident")
        if attr.value != "text":
            raise RuleSyntaxError(attr.line, f"unknown label attribute {attr.value!r}")
        return name, LabelText(label)


def _check_rule(rule: Rule, line: int) -> None:
    if len(rule.lhs) == 1 and rule.lhs[0].quantifier in (Quantifier.STAR, Quantifier.PLUS):
        raise RuleSyntaxError(line, f"rule {rule.name}: a repeated element cannot stand alone")
    if all(el.quantifier in (Quantifier.STAR, Quantifier.OPTIONAL) for el in rule.lhs):
        raise RuleSyntaxError(line, f"rule {rule.name}: pattern can match nothing")
    bound = rule.labels()
    for action in rule.rhs:
        used = [action.label] + [v.label for _, v in action.features if isinstance(v, LabelText)]
        for label in used:
            if label not in bound:
                raise UnknownBinding(line, f"rule {rule.name}: label :{label} is not bound on the left-hand side")


def _make_phase(name: str, inputs: list[str] | None, gap: int, rules: list[Rule], line: int) -> Phase:
    seen: set[str] = set()
    for rule in rules:
        if rule.name in seen:
            raise RuleSyntaxError(line, f"duplicate rule name {rule.name} in phase {name}")
        seen.add(rule.name)
    if inputs is None:
        inputs = [c.type for r in rules for el in r.lhs for c in el.constraints]
    return Phase(name, tuple(sorted(set(inputs))), tuple(rules), gap)


def parse_rules(source: str) -> list[Phase]:
    return _Parser(source).parse()


# ---------------------------------------------------------------------------
# Printer

def _q(value: str) -> str:
    return json.dumps(value, ensure_ascii=False)


def _format_element(el: PatternElement) -> str:
    blocks = []
    for c in el.constraints:
        if c.features:
            tests = ", ".join(f"{c.type}.{k} == {_q(v)}" for k, v in c.features)
            blocks.append("{" + tests + "}")
        else:
            blocks.append("{" + c.type + "}")
    labels = "".join(f":{b}" for b in el.bindings)
    return f"({' | '.join(blocks)}){el.quantifier.value}{labels}"


def _format_value(value: FeatureValue) -> str:
    return f":{value.label}.text" if isinstance(value, LabelText) else _q(value)


def format_rules(phases: list[Phase]) -> str:
    """Render phases back to rule source; `parse_rules` inverts this."""
    out: list[str] = []
    for phase in phases:
        out.append(f"Phase: {phase.name}")
        out.append("Input: " + " ".join(phase.input_types))
        out.append(f"Gap: {phase.gap}")
        for rule in phase.rules:
            out.append("")
            out.append(f"Rule: {rule.name}")
            out.append(f"Priority: {rule.priority}")
            out.append(" ".join(_format_element(el) for el in rule.lhs))
            out.append("-->")
            actions = []
            for a in rule.rhs:
                feats = ", ".join(f"{k} = {_format_value(v)}" for k, v in a.features)
                actions.append(f":{a.label}.{a.type} = {{{feats}}}")
            out.append(",\n".join(actions))
        out.append("")
    return "\n".join(out)
