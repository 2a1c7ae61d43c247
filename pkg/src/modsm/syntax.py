"""Abstract syntax of traditional programs and their signatures.

Terms, atoms and rules are frozen dataclasses, so they hash and compare
structurally.  Source spans ride along for diagnostics but never take part
in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .errors import ArityError, RuleRestrictionError, SourceSpan


@dataclass(frozen=True, order=True)
class Variable:
    name: str

    def text(self, sep: str = ", ") -> str:
        return self.name

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Constant:
    name: str

    def text(self, sep: str = ", ") -> str:
        return self.name

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Function:
    name: str
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ValueError("a function term needs at least one argument; use Constant")

    def text(self, sep: str = ", ") -> str:
        return f"{self.name}({sep.join(a.text(sep) for a in self.args)})"

    def __str__(self) -> str:
        return self.text(",")


Term = Union[Variable, Constant, Function]


def term_variables(t: Term) -> Iterator[Variable]:
    if isinstance(t, Variable):
        yield t
    elif isinstance(t, Function):
        for a in t.args:
            yield from term_variables(a)


def is_ground_term(t: Term) -> bool:
    return next(term_variables(t), None) is None


def substitute_term(t: Term, theta: dict) -> Term:
    if isinstance(t, Variable):
        return theta.get(t, t)
    if isinstance(t, Function):
        return Function(t.name, tuple(substitute_term(a, theta) for a in t.args))
    return t


@dataclass(frozen=True, order=True)
class Predicate:
    name: str
    args: tuple = ()
    span: SourceSpan | None = field(default=None, compare=False, hash=False, repr=False)

    @property
    def arity(self) -> int:
        return len(self.args)

    def variables(self) -> Iterator[Variable]:
        for a in self.args:
            yield from term_variables(a)

    def substitute(self, theta: dict) -> "Predicate":
        return Predicate(self.name, tuple(substitute_term(a, theta) for a in self.args))

    def text(self, sep: str = ", ") -> str:
        if not self.args:
            return self.name
        return f"{self.name}({sep.join(a.text(sep) for a in self.args)})"

    def __str__(self) -> str:
        # compact form, used for ground atoms in models
        return self.text(",")


@dataclass(frozen=True, order=True)
class Equality:
    left: Term
    right: Term
    span: SourceSpan | None = field(default=None, compare=False, hash=False, repr=False)

    def variables(self) -> Iterator[Variable]:
        yield from term_variables(self.left)
        yield from term_variables(self.right)

    def substitute(self, theta: dict) -> "Equality":
        return Equality(substitute_term(self.left, theta), substitute_term(self.right, theta))

    def text(self, sep: str = ", ") -> str:
        return f"{self.left.text(sep)} = {self.right.text(sep)}"

    def __str__(self) -> str:
        return self.text(",")


Atom = Union[Predicate, Equality]


def atom_variables(a: Atom) -> Iterator[Variable]:
    return a.variables()


@dataclass(frozen=True)
class Rule:
    """``head :- pos, not neg, not not negneg.``

    An empty head is a constraint; an empty body makes a fact.
    """

    head: tuple = ()
    pos: tuple = ()
    neg: tuple = ()
    negneg: tuple = ()
    span: SourceSpan | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        for bucket in ("head", "pos", "neg", "negneg"):
            value = getattr(self, bucket)
            if not isinstance(value, tuple):
                object.__setattr__(self, bucket, tuple(value))
        for bucket in ("head", "negneg"):
            for a in getattr(self, bucket):
                if isinstance(a, Equality):
                    where = "head" if bucket == "head" else "scope of 'not not'"
                    raise RuleRestrictionError(
                        f"equality {a.text()} may not occur in the {where} of a rule",
                        a.span or self.span,
                    )

    @property
    def body(self) -> tuple:
        """Body literals as ``(polarity, atom)`` pairs, polarity 0/1/2 = number of nots."""
        return (
            tuple((0, a) for a in self.pos)
            + tuple((1, a) for a in self.neg)
            + tuple((2, a) for a in self.negneg)
        )

    def atoms(self) -> Iterator[Atom]:
        yield from self.head
        yield from self.pos
        yield from self.neg
        yield from self.negneg

    def variables(self) -> list:
        """Distinct variables in order of first occurrence (head, then body)."""
        seen = {}
        for a in self.atoms():
            for v in a.variables():
                seen.setdefault(v, None)
        return list(seen)

    def substitute(self, theta: dict) -> "Rule":
        return Rule(
            tuple(a.substitute(theta) for a in self.head),
            tuple(a.substitute(theta) for a in self.pos),
            tuple(a.substitute(theta) for a in self.neg),
            tuple(a.substitute(theta) for a in self.negneg),
        )

    def is_fact(self) -> bool:
        return bool(self.head) and not (self.pos or self.neg or self.negneg)


def body_from_literals(literals: Iterable) -> dict:
    """Split ``(polarity, atom)`` pairs back into the three body buckets."""
    buckets = {0: [], 1: [], 2: []}
    for polarity, a in literals:
        buckets[polarity].append(a)
    return {"pos": tuple(buckets[0]), "neg": tuple(buckets[1]), "negneg": tuple(buckets[2])}


@dataclass(frozen=True)
class Program:
    rules: tuple = ()

    def __post_init__(self):
        if not isinstance(self.rules, tuple):
            object.__setattr__(self, "rules", tuple(self.rules))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __add__(self, other: "Program") -> "Program":
        return Program(self.rules + other.rules)

    def rule_set(self) -> frozenset:
        return frozenset(self.rules)


@dataclass(frozen=True)
class Signature:
    functions: dict = field(default_factory=dict)
    predicates: dict = field(default_factory=dict)

    @property
    def constants(self) -> list:
        return sorted(n for n, a in self.functions.items() if a == 0)

    def union(self, other: "Signature") -> "Signature":
        functions = dict(self.functions)
        predicates = dict(self.predicates)
        _merge(functions, other.functions, "function")
        _merge(predicates, other.predicates, "predicate")
        return Signature(functions, predicates)

    def restricted_to(self, predicates: Iterable[str]) -> "Signature":
        keep = set(predicates)
        return Signature(dict(self.functions),
                         {p: a for p, a in self.predicates.items() if p in keep})

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self.functions == other.functions and self.predicates == other.predicates

    def __hash__(self):
        return hash((frozenset(self.functions.items()), frozenset(self.predicates.items())))


def _merge(target: dict, source: dict, kind: str) -> None:
    for name, arity in source.items():
        if target.setdefault(name, arity) != arity:
            raise ArityError(kind, name, target[name], arity)


def _collect_term(t: Term, functions: dict) -> None:
    if isinstance(t, Constant):
        _merge(functions, {t.name: 0}, "function")
    elif isinstance(t, Function):
        _merge(functions, {t.name: len(t.args)}, "function")
        for a in t.args:
            _collect_term(a, functions)


def signature_of(p: Program | Iterable[Rule]) -> Signature:
    """Function and predicate symbols of ``p`` with their arities (equality excluded)."""
    functions: dict = {}
    predicates: dict = {}
    for rule in p:
        for a in rule.atoms():
            if isinstance(a, Predicate):
                _merge(predicates, {a.name: a.arity}, "predicate")
                terms = a.args
            else:
                terms = (a.left, a.right)
            for t in terms:
                _collect_term(t, functions)
    return Signature(functions, predicates)


def predicate_signature(p: Program | Iterable[Rule]) -> set:
    return set(signature_of(p).predicates)


def rule_variables(r: Rule) -> tuple:
    head_vars = {v for a in r.head for v in a.variables()}
    body_vars = {v for a in r.pos + r.neg + r.negneg for v in a.variables()}
    return head_vars, body_vars
