"""Naive two-step grounding over a finite Herbrand universe.

Step one substitutes universe elements for variables in every possible
way; step two evaluates each ground equality to true or false and
simplifies the instance.  There is no relevance or safety analysis: the
semantic modules need the full, naive ground program.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import InfiniteUniverseError, NoConstantError
from .syntax import (
    Constant,
    Equality,
    Function,
    Predicate,
    Program,
    Rule,
    Signature,
    signature_of,
)


@dataclass(frozen=True, order=True)
class GroundRule:
    head: tuple = ()
    pos: tuple = ()
    neg: tuple = ()
    negneg: tuple = ()

    def atoms(self):
        yield from self.head
        yield from self.pos
        yield from self.neg
        yield from self.negneg

    def as_rule(self) -> Rule:
        return Rule(self.head, self.pos, self.neg, self.negneg)


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple
    atoms: frozenset  # the Herbrand base

    def __len__(self) -> int:
        return len(self.rules)


def _term_key(t) -> tuple:
    return (str(t),)


def herbrand_universe(sig: Signature, max_depth: int | None = None) -> list:
    """Ground terms over ``sig`` with function nesting depth at most ``max_depth``."""
    constants = [Constant(c) for c in sig.constants]
    if not constants:
        raise NoConstantError()
    functions = {f: a for f, a in sig.functions.items() if a > 0}
    if not functions:
        return sorted(constants, key=_term_key)
    if max_depth is None:
        raise InfiniteUniverseError(functions)
    level = set(constants)
    for _ in range(max_depth):
        new = set(level)
        for name, arity in sorted(functions.items()):
            for args in itertools.product(sorted(level, key=_term_key), repeat=arity):
                new.add(Function(name, tuple(args)))
        level = new
    return sorted(level, key=_term_key)


def universe_from_names(names: Iterable[str], functions: dict | None = None,
                        max_depth: int | None = None) -> list:
    """Herbrand universe generated by the given constant names (plus ``functions``)."""
    fs = {n: 0 for n in names}
    fs.update({f: a for f, a in (functions or {}).items() if a > 0})
    return herbrand_universe(Signature(fs, {}), max_depth)


def instances(r: Rule, universe: Iterable) -> list:
    """Every instance of ``r`` over ``universe``, before equality simplification."""
    universe = list(universe)
    variables = r.variables()
    if not variables:
        return [r]
    out = []
    for values in itertools.product(universe, repeat=len(variables)):
        out.append(r.substitute(dict(zip(variables, values))))
    return out


def simplify_equalities(g: Rule) -> GroundRule | None:
    """Evaluate ground equalities; ``None`` means the instance is vacuously satisfied."""
    pos, neg = [], []
    for a in g.pos:
        if isinstance(a, Equality):
            if a.left != a.right:
                return None  # false conjunct
        else:
            pos.append(a)
    for a in g.neg:
        if isinstance(a, Equality):
            if a.left == a.right:
                return None  # not true
        else:
            neg.append(a)
    return GroundRule(tuple(g.head), tuple(pos), tuple(neg), tuple(g.negneg))


def herbrand_base(predicates: dict, universe: Iterable) -> frozenset:
    universe = list(universe)
    base = set()
    for name, arity in predicates.items():
        for args in itertools.product(universe, repeat=arity):
            base.add(Predicate(name, tuple(args)))
    return frozenset(base)


def rule_sort_key(r: GroundRule) -> str:
    from .parser import render_rule

    return render_rule(r.as_rule())


def ground(p: Program, universe: Iterable | None = None, predicates: dict | None = None,
           max_depth: int | None = None) -> GroundProgram:
    """Ground ``p`` over ``universe`` (default: the program's own Herbrand universe).

    ``predicates`` adds arities to the Herbrand base beyond those of ``p``.
    """
    sig = signature_of(p)
    if universe is None:
        universe = herbrand_universe(sig, max_depth) if p.rules else []
    universe = list(universe)
    preds = dict(predicates or {})
    for name, arity in sig.predicates.items():
        preds.setdefault(name, arity)
    rules = set()
    for r in p.rules:
        for inst in instances(r, universe):
            g = simplify_equalities(inst)
            if g is not None:
                rules.add(g)
    return GroundProgram(tuple(sorted(rules, key=rule_sort_key)), herbrand_base(preds, universe))
