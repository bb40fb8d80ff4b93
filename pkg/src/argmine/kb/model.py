"""Axioms, concept expressions and assertions of the knowledge base."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


class MalformedAssertion(ValueError):
    pass


class TBoxError(ValueError):
    pass


# Roles whose objects may be text literals rather than individuals.
DATA_ROLES = frozenset({"hasText", "hasIndicator", "hasClaimIndicator", "hasPremiseIndicator"})
STRING = "String"


@dataclass(frozen=True)
class Literal:
    value: str

    def __str__(self) -> str:
        return self.value


Term = Union[str, Literal]


@dataclass(frozen=True)
class ConceptAssertion:
    individual: str
    concept: str


@dataclass(frozen=True)
class RoleAssertion:
    subject: str
    role: str
    object: Term


Assertion = Union[ConceptAssertion, RoleAssertion]


def check_assertion(a: Assertion) -> Assertion:
    if isinstance(a, ConceptAssertion):
        if not a.individual or not a.concept:
            raise MalformedAssertion(f"empty name in {a}")
        return a
    if not a.subject or not a.role:
        raise MalformedAssertion(f"empty name in {a}")
    if isinstance(a.object, Literal):
        if a.role not in DATA_ROLES:
            raise MalformedAssertion(f"literal {a.object.value!r} on object role {a.role}")
    elif not a.object:
        raise MalformedAssertion(f"empty object in {a}")
    return a


def assertion_key(a: Assertion) -> tuple:
    """Total order used for deterministic output."""
    if isinstance(a, ConceptAssertion):
        return (0, a.individual, a.concept, 0, "")
    lit = isinstance(a.object, Literal)
    return (1, a.subject, a.role, int(lit), str(a.object))


# ---------------------------------------------------------------------------
# Concept expressions used in definitions

@dataclass(frozen=True)
class Atomic:
    name: str


@dataclass(frozen=True)
class Exists:
    role: str
    filler: "Concept"


@dataclass(frozen=True)
class ExactlyOne:
    """(=1) role.filler, read under the closed world of known fillers."""
    role: str
    filler: "Concept"


@dataclass(frozen=True)
class And:
    parts: tuple["Concept", ...]


# Present in the vocabulary, rejected in definitions: they need reasoning
# beyond forward chaining.
@dataclass(frozen=True)
class Not:
    part: "Concept"


@dataclass(frozen=True)
class Or:
    parts: tuple["Concept", ...]


@dataclass(frozen=True)
class Forall:
    role: str
    filler: "Concept"


Concept = Union[Atomic, Exists, ExactlyOne, And, Not, Or, Forall]


# ---------------------------------------------------------------------------
# TBox axioms

@dataclass(frozen=True)
class SubClass:
    sub: str
    sup: str


@dataclass(frozen=True)
class Domain:
    role: str
    concept: str


@dataclass(frozen=True)
class Range:
    role: str
    concept: str


@dataclass(frozen=True)
class Transitive:
    role: str


@dataclass(frozen=True)
class Inverse:
    role: str
    inverse: str


@dataclass(frozen=True)
class SubRole:
    sub: str
    sup: str


@dataclass(frozen=True)
class Definition:
    name: str
    concept: Concept


TBoxAxiom = Union[SubClass, Domain, Range, Transitive, Inverse, SubRole, Definition]


def concept_names(c: Concept) -> set[str]:
    if isinstance(c, Atomic):
        return {c.name}
    if isinstance(c, (Exists, ExactlyOne, Forall)):
        return concept_names(c.filler)
    if isinstance(c, Not):
        return concept_names(c.part)
    return set().union(*(concept_names(p) for p in c.parts))


def concept_roles(c: Concept) -> set[str]:
    if isinstance(c, Atomic):
        return set()
    if isinstance(c, (Exists, ExactlyOne, Forall)):
        return {c.role} | concept_roles(c.filler)
    if isinstance(c, Not):
        return concept_roles(c.part)
    return set().union(*(concept_roles(p) for p in c.parts))


def vocabulary(tbox: list[TBoxAxiom]) -> tuple[set[str], set[str]]:
    """(concept names, role names) mentioned by the axioms."""
    concepts: set[str] = set()
    roles: set[str] = set()
    for ax in tbox:
        if isinstance(ax, SubClass):
            concepts |= {ax.sub, ax.sup}
        elif isinstance(ax, (Domain, Range)):
            roles.add(ax.role)
            concepts.add(ax.concept)
        elif isinstance(ax, Transitive):
            roles.add(ax.role)
        elif isinstance(ax, (Inverse,)):
            roles |= {ax.role, ax.inverse}
        elif isinstance(ax, SubRole):
            roles |= {ax.sub, ax.sup}
        elif isinstance(ax, Definition):
            concepts.add(ax.name)
            concepts |= concept_names(ax.concept)
            roles |= concept_roles(ax.concept)
    return concepts, roles
