"""Description-logic knowledge base: TBox, ABox, forward reasoning."""

from .abox_io import (
    export_abox, format_abox, format_assertion, parse_abox, parse_abox_text, parse_assertion,
    write_atomic,
)
from .model import (
    DATA_ROLES, And, Assertion, Atomic, ConceptAssertion, Definition, Domain, ExactlyOne, Exists,
    Forall, Inverse, Literal, MalformedAssertion, Not, Or, Range, RoleAssertion, SubClass, SubRole,
    TBoxAxiom, TBoxError, Transitive, assertion_key,
)
from .reasoner import (
    KnowledgeBase, UnknownName, assert_fact, classify_individuals, materialize,
    query_concept_instances, query_role,
)
from .tbox import ParseError, builtin_tbox, check_tbox, format_tbox, parse_tbox

__all__ = [
    "And", "Assertion", "Atomic", "ConceptAssertion", "DATA_ROLES", "Definition", "Domain",
    "ExactlyOne", "Exists", "Forall", "Inverse", "KnowledgeBase", "Literal", "MalformedAssertion",
    "Not", "Or", "ParseError", "Range", "RoleAssertion", "SubClass", "SubRole", "TBoxAxiom",
    "TBoxError", "Transitive", "UnknownName", "assert_fact", "assertion_key", "builtin_tbox",
    "check_tbox", "classify_individuals", "export_abox", "format_abox", "format_assertion",
    "format_tbox", "materialize", "parse_abox", "parse_abox_text", "parse_assertion", "parse_tbox",
    "query_concept_instances", "query_role", "write_atomic",
]
