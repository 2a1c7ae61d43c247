"""Workbench for first-order modular logic programs under the SM operator."""

from .errors import (
    ArityError,
    BoundExceeded,
    GroundingError,
    InfiniteUniverseError,
    ModsmError,
    ModsmSyntaxError,
    ModuleError,
    NoConstantError,
    ProjectionError,
    RuleRestrictionError,
    SourceSpan,
)
from .ground import GroundProgram, GroundRule, ground, herbrand_universe, instances, simplify_equalities
from .modular import (
    DefModule,
    ModularProgram,
    as_module,
    conjunction,
    iota,
    modular_stable_models,
    pi,
    restrict,
    sigma,
)
from .parser import parse_modular, parse_program, render
from .rewrite import (
    ProjectionParts,
    ProjectionSpec,
    auto_project,
    decompose,
    fresh_name,
    project_program,
    project_rule,
    shift,
)
from .stable import (
    Interpretation,
    answer_sets,
    is_p_stable,
    p_stable_models,
    rule_to_formula,
    satisfies,
    star_eval,
)
from .structure import DepGraph, dependency_graph, is_coherent, is_simple, sccs
from .syntax import (
    Constant,
    Equality,
    Function,
    Predicate,
    Program,
    Rule,
    Signature,
    Variable,
    predicate_signature,
    rule_variables,
    signature_of,
)
from .verify import (
    Report,
    ce_in_context,
    check_conservative_extension,
    check_equivalence,
    check_modular_ce,
    check_projection,
    check_projection_result,
    check_shift,
    check_splitting,
)

__version__ = "0.1.0"
