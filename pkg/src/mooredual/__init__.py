"""Moore machine duality: minimization via biduals, products, normal forms,
and substitution fixed-point indexing."""

from .machine import (
    Counterexample,
    DomainError,
    MooreMachine,
    ParseError,
    emit_machine,
    format_word,
    left_action,
    parse_machine,
    parse_word,
    right_action,
    run_left,
    run_right,
    trim,
)
from .duality import (
    DualMachine,
    act_left_on_function,
    act_right_on_function,
    bidual,
    dual,
    plain,
    state_classes,
)
from .equivalence import (
    OutputCombiner,
    equivalent,
    isomorphic,
    minimize,
    normal_form,
    oracle_minimize,
    product,
    states_equivalent,
)
from .substitution import (
    PaddedMachine,
    PaddingSpec,
    Substitution,
    apply,
    emit_substitution,
    expand_fixed_point,
    letter_at,
    letter_at_constant,
    minimize_substitution,
    parse_substitution,
    phi,
    psi,
    to_padded_machine,
)
from .cli import run_cli, to_dot

__all__ = [
    "Counterexample",
    "DomainError",
    "DualMachine",
    "MooreMachine",
    "OutputCombiner",
    "PaddedMachine",
    "PaddingSpec",
    "ParseError",
    "Substitution",
    "act_left_on_function",
    "act_right_on_function",
    "apply",
    "bidual",
    "dual",
    "emit_machine",
    "emit_substitution",
    "equivalent",
    "expand_fixed_point",
    "format_word",
    "isomorphic",
    "left_action",
    "letter_at",
    "letter_at_constant",
    "minimize",
    "minimize_substitution",
    "normal_form",
    "oracle_minimize",
    "parse_machine",
    "parse_substitution",
    "parse_word",
    "phi",
    "plain",
    "product",
    "psi",
    "right_action",
    "run_cli",
    "run_left",
    "run_right",
    "state_classes",
    "states_equivalent",
    "to_dot",
    "to_padded_machine",
    "trim",
]
