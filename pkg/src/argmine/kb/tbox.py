"""Built-in terminology and the plain-text syntax for extra axioms."""

from __future__ import annotations

import re

from .model import (
    And, Atomic, Definition, Domain, ExactlyOne, Exists, Forall, Inverse, Not, Or, Range,
    STRING, SubClass, SubRole, TBoxAxiom, TBoxError, Transitive, concept_names,
)


class ParseError(ValueError):
    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


CLAIM_INDICATOR_KINDS = ("Ci", "CibPe", "CibPebVc", "CibVc", "ElOfCnbCw_Claim", "QbPebVc")
PREMISE_INDICATOR_KINDS = ("Pi", "PibPe", "PibPebVp", "PibVp", "ElOfCnbCw_Premise", "DbVp")


def _argumentation() -> list[TBoxAxiom]:
    axioms: list[TBoxAxiom] = [
        SubClass("ClinicalArgument", "Argument"),
        Domain("supports", "Argument"), Range("supports", "Argument"),
        Domain("attacks", "Argument"), Range("attacks", "Argument"),
        Transitive("supports"),
        Definition("Argument", And((
            Exists("hasPremise", Atomic("Premise")),
            ExactlyOne("hasClaim", Atomic("Claim")),
        ))),
        Definition("Claim", And((
            Exists("hasText", Atomic(STRING)),
            Exists("hasIndicator", Atomic("ClaimIndicator")),
        ))),
        Definition("Premise", And((
            Exists("hasText", Atomic(STRING)),
            Exists("hasIndicator", Atomic("PremiseIndicator")),
        ))),
        SubClass("PremiseIndicator", "Indicator"),
        SubClass("ClaimIndicator", "Indicator"),
        SubClass("MacroIndicator", "Indicator"),
        SubClass("ClaimIndicator", "MacroIndicator"),
        SubClass("PremiseIndicator", "MacroIndicator"),
        SubClass("VerbRelatedToClaim", "MacroIndicator"),
        SubClass("VerbRelatedToPremise", "MacroIndicator"),
        Range("hasIndicator", "Indicator"),
        SubRole("hasPremiseIndicator", "hasIndicator"),
        SubRole("hasClaimIndicator", "hasIndicator"),
        Definition("PCArgument", Exists("hasPremise", Exists("before", Atomic("Claim")))),
        Definition("CPArgument", Exists("hasPremise", Exists("after", Atomic("Claim")))),
        SubClass("PCArgument", "Argument"),
        SubClass("CPArgument", "Argument"),
        SubClass("ClaimPremiseArgument", "Argument"),
        Inverse("before", "after"),
        Transitive("before"),
        Transitive("after"),
        Domain("before", "Sentence"),
        Range("before", "Sentence"),
    ]
    axioms += [SubClass(k, "ClaimIndicator") for k in CLAIM_INDICATOR_KINDS]
    axioms += [SubClass(k, "PremiseIndicator") for k in PREMISE_INDICATOR_KINDS]
    return axioms


def _cancer() -> list[TBoxAxiom]:
    return [
        SubClass("Cancer", "Disease"),
        SubClass("BreastCancer", "Cancer"),
        Range("manifestedSymptom", "Symptom"),
        Range("appliedTreatment", "Treatment"),
        Range("affectedDomain", "Domain"),
        Range("impliedPerson", "Person"),
        Range("haveCharacteristic", "Characteristic"),
        Domain("haveQuantifier", "People"),
        Range("haveQuantifier", "Quantifier"),
    ]


def builtin_tbox() -> list[TBoxAxiom]:
    """Argumentation and cancer-domain axioms shipped with the tool."""
    return _argumentation() + _cancer()


def check_tbox(tbox: list[TBoxAxiom]) -> None:
    """Reject empty names, unsupported constructors in definitions and
    cyclic definitions."""
    defined: dict[str, set[str]] = {}

    def walk(c, name: str) -> None:
        if isinstance(c, (Not, Or, Forall)):
            raise TBoxError(f"definition of {name} uses {type(c).__name__}, which has no inference rule")
        if isinstance(c, Atomic):
            if not c.name:
                raise TBoxError(f"empty concept name in definition of {name}")
        elif isinstance(c, (Exists, ExactlyOne)):
            if not c.role:
                raise TBoxError(f"empty role name in definition of {name}")
            walk(c.filler, name)
        elif isinstance(c, And):
            for p in c.parts:
                walk(p, name)

    for ax in tbox:
        if isinstance(ax, Definition):
            if not ax.name:
                raise TBoxError("definition with empty name")
            if ax.name in defined:
                raise TBoxError(f"{ax.name} is defined twice")
            walk(ax.concept, ax.name)
            defined[ax.name] = concept_names(ax.concept)
        else:
            names = [v for v in vars(ax).values()]
            if any(not n for n in names):
                raise TBoxError(f"empty name in {ax}")

    state: dict[str, int] = {}

    def visit(name: str, path: list[str]) -> None:
        if state.get(name) == 2:
            return
        if state.get(name) == 1:
            raise TBoxError("definition cycle: " + " -> ".join(path + [name]))
        state[name] = 1
        for dep in sorted(defined.get(name, ())):
            if dep in defined:
                visit(dep, path + [name])
        state[name] = 2

    for name in sorted(defined):
        visit(name, [])


_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_TBOX_LINES = [
    (re.compile(rf"^({_NAME})\s+subClassOf\s+({_NAME})$"), SubClass),
    (re.compile(rf"^transitive\s+({_NAME})$"), Transitive),
    (re.compile(rf"^inverse\s+({_NAME})\s+({_NAME})$"), Inverse),
    (re.compile(rf"^subRole\s+({_NAME})\s+({_NAME})$"), SubRole),
    (re.compile(rf"^domain\s+({_NAME})\s+({_NAME})$"), Domain),
    (re.compile(rf"^range\s+({_NAME})\s+({_NAME})$"), Range),
]


def parse_tbox(text: str) -> list[TBoxAxiom]:
    axioms: list[TBoxAxiom] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for pattern, cls in _TBOX_LINES:
            m = pattern.match(line)
            if m:
                axioms.append(cls(*m.groups()))
                break
        else:
            raise ParseError(lineno, f"unrecognised axiom {line!r}")
    return axioms


def format_tbox(axioms: list[TBoxAxiom]) -> str:
    """Inverse of `parse_tbox` for the axiom kinds it accepts."""
    out = []
    for ax in axioms:
        if isinstance(ax, SubClass):
            out.append(f"{ax.sub} subClassOf {ax.sup}")
        elif isinstance(ax, Transitive):
            out.append(f"transitive {ax.role}")
        elif isinstance(ax, Inverse):
            out.append(f"inverse {ax.role} {ax.inverse}")
        elif isinstance(ax, SubRole):
            out.append(f"subRole {ax.sub} {ax.sup}")
        elif isinstance(ax, Domain):
            out.append(f"domain {ax.role} {ax.concept}")
        elif isinstance(ax, Range):
            out.append(f"range {ax.role} {ax.concept}")
        else:
            raise TBoxError(f"{type(ax).__name__} has no text form")
    return "".join(line + "\n" for line in out)
