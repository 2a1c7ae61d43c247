"""Source-to-source rewritings: shift and projection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ProjectionError
from .syntax import (
    Predicate,
    Program,
    Rule,
    Variable,
    body_from_literals,
    rule_variables,
    signature_of,
)


def shift_rule(r: Rule, intensional: Iterable[str]) -> Rule:
    keep = set(intensional)
    head = tuple(a for a in r.head if a.name in keep)
    moved = tuple(a for a in r.head if a.name not in keep)
    return Rule(head, r.pos, r.neg + moved, r.negneg, span=r.span)


def shift(f: Program, intensional: Iterable[str]) -> Program:
    """Move head atoms of non-intensional predicates into the body under ``not``."""
    keep = set(intensional)
    return Program(tuple(shift_rule(r, keep) for r in f.rules))


@dataclass(frozen=True)
class ProjectionParts:
    alpha: tuple   # (polarity, atom) literals mentioning some projected variable
    y: tuple       # remaining variables of alpha, first-occurrence order
    beta: tuple    # the other body literals
    gamma: tuple   # head atoms


@dataclass(frozen=True)
class ProjectionSpec:
    rule_index: int
    vars: tuple
    fresh: str

    def __post_init__(self):
        if not isinstance(self.vars, tuple):
            object.__setattr__(self, "vars", tuple(self.vars))


def _as_vars(xs) -> list:
    return [x if isinstance(x, Variable) else Variable(x) for x in xs]


def decompose(r: Rule, x) -> ProjectionParts:
    x = _as_vars(x)
    if not x:
        raise ProjectionError("at least one variable must be projected")
    head_vars, body_vars = rule_variables(r)
    for v in x:
        if v in head_vars:
            raise ProjectionError(f"variable {v} occurs in the head and cannot be projected")
        if v not in body_vars:
            raise ProjectionError(f"variable {v} does not occur in the rule body")
    xs = set(x)
    alpha, beta = [], []
    for polarity, atom in r.body:
        (alpha if xs & set(atom.variables()) else beta).append((polarity, atom))
    y = {}
    for _, atom in alpha:
        for v in atom.variables():
            if v not in xs:
                y.setdefault(v, None)
    return ProjectionParts(tuple(alpha), tuple(y), tuple(beta), tuple(r.head))


def project_rule(r: Rule, x, fresh: str) -> tuple:
    """Split ``r`` into ``gamma :- fresh(y), beta.`` and ``fresh(y) :- alpha.``"""
    parts = decompose(r, x)
    t = Predicate(fresh, parts.y)
    rule1 = Rule(parts.gamma, **_prepend(t, body_from_literals(parts.beta)))
    rule2 = Rule((t,), **body_from_literals(parts.alpha))
    return rule1, rule2


def _prepend(t: Predicate, body: dict) -> dict:
    body = dict(body)
    body["pos"] = (t,) + body["pos"]
    return body


def _symbols(p: Program) -> set:
    sig = signature_of(p)
    return set(sig.predicates) | set(sig.functions)


def project_program(p: Program, specs: Sequence[ProjectionSpec]) -> Program:
    """Apply projections in order; each replaces its rule and appends the definition."""
    rules = list(p.rules)
    for spec in specs:
        if not 0 <= spec.rule_index < len(rules):
            raise ProjectionError(
                f"rule index {spec.rule_index} out of range (program has {len(rules)} rules)"
            )
        if spec.fresh in _symbols(Program(tuple(rules))):
            raise ProjectionError(f"predicate {spec.fresh!r} already occurs in the program")
        rule1, rule2 = project_rule(rules[spec.rule_index], spec.vars, spec.fresh)
        rules[spec.rule_index] = rule1
        rules.append(rule2)
    return Program(tuple(rules))


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    n = 1
    while f"{base}_{n}" in taken:
        n += 1
    return f"{base}_{n}"


def auto_project(p: Program, base: str = "t") -> tuple:
    """Project every rule with a heuristic choice of variables; returns ``(program, specs)``.

    Body-only variables are grouped by the exact set of body literals they
    occur in.  Groups are projected smallest literal set first, skipping a
    group whose literals span the whole body or already mention a
    predicate introduced here.  Each projection re-examines the rewritten
    rule.
    """
    rules = list(p.rules)
    taken = _symbols(p)
    introduced: set = set()
    specs = []
    index = 0
    while index < len(p.rules):
        spec = _next_auto(rules[index], index, introduced)
        if spec is None:
            index += 1
            continue
        fresh = fresh_name(base, taken)
        taken.add(fresh)
        introduced.add(fresh)
        rule1, rule2 = project_rule(rules[index], spec, fresh)
        rules[index] = rule1
        rules.append(rule2)
        specs.append(ProjectionSpec(index, tuple(v.name for v in spec), fresh))
    return Program(tuple(rules)), tuple(specs)


def _next_auto(r: Rule, index: int, introduced: set):
    head_vars, _ = rule_variables(r)
    body = r.body
    groups: dict = {}
    order = []
    for polarity, atom in body:
        for v in atom.variables():
            if v not in head_vars and v not in order:
                order.append(v)
    for v in order:
        occurs = frozenset(k for k, (_, atom) in enumerate(body) if v in set(atom.variables()))
        groups.setdefault(occurs, []).append(v)
    best = None
    for occurs, vs in groups.items():
        if len(occurs) == len(body):
            continue
        if any(body[k][1].name in introduced for k in occurs if isinstance(body[k][1], Predicate)):
            continue
        key = (len(occurs), order.index(vs[0]))
        if best is None or key < best[0]:
            best = (key, vs)
    return None if best is None else best[1]
