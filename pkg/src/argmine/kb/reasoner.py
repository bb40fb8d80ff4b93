"""Forward-chaining materialization, classification and retrieval."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .model import (
    And, Assertion, Atomic, Concept, ConceptAssertion, Definition, Domain, ExactlyOne, Exists,
    Inverse, Literal, Range, RoleAssertion, STRING, SubClass, SubRole, TBoxAxiom, Term,
    Transitive, check_assertion, vocabulary,
)
from .tbox import builtin_tbox, check_tbox


class UnknownName(KeyError):
    def __str__(self) -> str:
        return f"unknown name {self.args[0]!r}"


@dataclass
class _Rules:
    supers: dict[str, set[str]]
    super_roles: dict[str, set[str]]
    domains: dict[str, set[str]]
    ranges: dict[str, set[str]]
    transitive: set[str]
    inverses: dict[str, set[str]]
    definitions: list[Definition]

    @classmethod
    def compile(cls, tbox: list[TBoxAxiom]) -> "_Rules":
        r = cls(defaultdict(set), defaultdict(set), defaultdict(set), defaultdict(set), set(),
                defaultdict(set), [])
        for ax in tbox:
            if isinstance(ax, SubClass):
                r.supers[ax.sub].add(ax.sup)
            elif isinstance(ax, SubRole):
                r.super_roles[ax.sub].add(ax.sup)
            elif isinstance(ax, Domain):
                r.domains[ax.role].add(ax.concept)
            elif isinstance(ax, Range):
                r.ranges[ax.role].add(ax.concept)
            elif isinstance(ax, Transitive):
                r.transitive.add(ax.role)
            elif isinstance(ax, Inverse):
                r.inverses[ax.role].add(ax.inverse)
                r.inverses[ax.inverse].add(ax.role)
            elif isinstance(ax, Definition):
                r.definitions.append(ax)
        return r


@dataclass
class KnowledgeBase:
    """TBox plus ABox. `facts` is everything known, `asserted` the part
    that was stated explicitly; the difference is derived."""

    tbox: list[TBoxAxiom] = field(default_factory=builtin_tbox)
    asserted: set[Assertion] = field(default_factory=set)
    facts: set[Assertion] = field(default_factory=set)
    closed: bool = True

    def __post_init__(self) -> None:
        check_tbox(self.tbox)
        self._rules = _Rules.compile(self.tbox)
        self.facts |= self.asserted
        self._index()
        if self.asserted or self.facts:
            self.closed = False

    def _index(self) -> None:
        self._types: dict[str, set[str]] = defaultdict(set)
        self._out: dict[tuple[str, str], set[Term]] = defaultdict(set)
        self._in: dict[tuple[str, str], set[str]] = defaultdict(set)
        for f in self.facts:
            self._note(f)

    def _note(self, f: Assertion) -> None:
        if isinstance(f, ConceptAssertion):
            self._types[f.individual].add(f.concept)
        else:
            self._out[(f.role, f.subject)].add(f.object)
            if not isinstance(f.object, Literal):
                self._in[(f.role, f.object)].add(f.subject)

    @property
    def derived(self) -> set[Assertion]:
        return self.facts - self.asserted

    @property
    def abox(self) -> set[Assertion]:
        return set(self.facts)

    # -- updates -----------------------------------------------------------

    def assert_fact(self, assertion: Assertion) -> "KnowledgeBase":
        check_assertion(assertion)
        if assertion in self.asserted:
            return self
        self.asserted.add(assertion)
        if assertion not in self.facts:
            self.facts.add(assertion)
            self._note(assertion)
            self.closed = False
        return self

    def add_derived(self, assertion: Assertion) -> "KnowledgeBase":
        check_assertion(assertion)
        if assertion not in self.facts:
            self.facts.add(assertion)
            self._note(assertion)
            self.closed = False
        return self

    def _consequences(self, f: Assertion):
        r = self._rules
        if isinstance(f, ConceptAssertion):
            for sup in r.supers.get(f.concept, ()):
                yield ConceptAssertion(f.individual, sup)
            return
        x, role, y = f.subject, f.role, f.object
        for sup in r.super_roles.get(role, ()):
            yield RoleAssertion(x, sup, y)
        for c in r.domains.get(role, ()):
            yield ConceptAssertion(x, c)
        if isinstance(y, Literal):
            return
        for c in r.ranges.get(role, ()):
            yield ConceptAssertion(y, c)
        for inv in r.inverses.get(role, ()):
            yield RoleAssertion(y, inv, x)
        if role in r.transitive:
            for z in list(self._out.get((role, y), ())):
                if not isinstance(z, Literal):
                    yield RoleAssertion(x, role, z)
            for w in list(self._in.get((role, x), ())):
                yield RoleAssertion(w, role, y)

    def materialize(self) -> "KnowledgeBase":
        """Close the ABox under subsumption, subroles, domain, range,
        transitivity and inverses."""
        work = list(self.facts)
        while work:
            f = work.pop()
            for g in self._consequences(f):
                if g not in self.facts:
                    self.facts.add(g)
                    self._note(g)
                    work.append(g)
        self.closed = True
        return self

    # -- classification ----------------------------------------------------

    def satisfies(self, x: Term, c: Concept) -> bool:
        if isinstance(x, Literal):
            return isinstance(c, Atomic) and c.name == STRING
        if isinstance(c, Atomic):
            return c.name in self._types.get(x, ())
        if isinstance(c, Exists):
            return any(self.satisfies(y, c.filler) for y in self._out.get((c.role, x), ()))
        if isinstance(c, ExactlyOne):
            fillers = self._out.get((c.role, x), ())
            return len(fillers) == 1 and self.satisfies(next(iter(fillers)), c.filler)
        if isinstance(c, And):
            return all(self.satisfies(x, p) for p in c.parts)
        raise TypeError(f"unsupported concept {c!r}")

    def individuals(self) -> set[str]:
        out: set[str] = set()
        for f in self.facts:
            if isinstance(f, ConceptAssertion):
                out.add(f.individual)
            else:
                out.add(f.subject)
                if not isinstance(f.object, Literal):
                    out.add(f.object)
        return out

    def classify_individuals(self) -> "KnowledgeBase":
        """Add memberships in defined concepts until nothing changes."""
        self.materialize()
        while True:
            new = []
            people = sorted(self.individuals())
            for d in self._rules.definitions:
                for x in people:
                    if d.name not in self._types.get(x, ()) and self.satisfies(x, d.concept):
                        new.append(ConceptAssertion(x, d.name))
            if not new:
                return self
            for a in new:
                self.add_derived(a)
            self.materialize()

    # -- retrieval ---------------------------------------------------------

    def vocabulary(self) -> tuple[set[str], set[str]]:
        concepts, roles = vocabulary(self.tbox)
        for f in self.facts:
            if isinstance(f, ConceptAssertion):
                concepts.add(f.concept)
            else:
                roles.add(f.role)
        return concepts, roles

    def query_concept_instances(self, concept: str) -> set[str]:
        if concept not in self.vocabulary()[0]:
            raise UnknownName(concept)
        if not self.closed:
            self.materialize()
        return {x for x, cs in self._types.items() if concept in cs}

    def query_role(self, role: str, subject: str | None = None) -> set[tuple[str, Term]]:
        if role not in self.vocabulary()[1]:
            raise UnknownName(role)
        if not self.closed:
            self.materialize()
        return {(f.subject, f.object) for f in self.facts
                if isinstance(f, RoleAssertion) and f.role == role
                and (subject is None or f.subject == subject)}


def assert_fact(kb: KnowledgeBase, assertion: Assertion) -> KnowledgeBase:
    return kb.assert_fact(assertion)


def materialize(kb: KnowledgeBase) -> KnowledgeBase:
    return kb.materialize()


def classify_individuals(kb: KnowledgeBase) -> KnowledgeBase:
    return kb.classify_individuals()


def query_concept_instances(kb: KnowledgeBase, concept: str) -> set[str]:
    return kb.query_concept_instances(concept)


def query_role(kb: KnowledgeBase, role: str, subject: str | None = None) -> set[tuple[str, Term]]:
    return kb.query_role(role, subject)
