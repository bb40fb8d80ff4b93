from .dsl import (
    Action,
    Constraint,
    LabelText,
    PatternElement,
    Phase,
    Quantifier,
    Rule,
    RuleSyntaxError,
    UnknownBinding,
    format_rules,
    parse_rules,
)
from .engine import run_phase, run_phases
from .macros import (
    CLAIM_MACRO,
    PREMISE_MACRO,
    MacroKind,
    annotate_macros,
    builtin_phases,
    match_claim_macros,
    match_premise_macros,
)
