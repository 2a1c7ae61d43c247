"""Def-modules, modular programs and their stable models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ModuleError
from .ground import ground, herbrand_base, herbrand_universe
from .stable import (
    DEFAULT_MAX_ATOMS,
    Interpretation,
    _Part,
    stable_models_of_parts,
)
from .syntax import Program, Signature, signature_of


@dataclass(frozen=True)
class DefModule:
    """SM_p[F]: a program together with its intensional predicates."""

    name: str
    intensional: tuple
    program: Program

    def __post_init__(self):
        if not isinstance(self.intensional, tuple):
            object.__setattr__(self, "intensional", tuple(self.intensional))

    def validate(self) -> None:
        """Reject intensional predicates that do not occur in the program."""
        missing = [p for p in self.intensional if p not in signature_of(self.program).predicates]
        if missing:
            raise ModuleError(
                f"module {self.name!r}: intensional predicate(s) {', '.join(missing)} "
                "do not occur in its rules"
            )

    def signature(self) -> Signature:
        return signature_of(self.program)


@dataclass(frozen=True)
class ModularProgram:
    modules: tuple = ()

    def __post_init__(self):
        if not isinstance(self.modules, tuple):
            object.__setattr__(self, "modules", tuple(self.modules))

    def __iter__(self):
        return iter(self.modules)

    def __len__(self) -> int:
        return len(self.modules)

    def signature(self) -> Signature:
        return sigma(self)


def sigma(mp: ModularProgram) -> Signature:
    sig = Signature()
    for m in mp.modules:
        sig = sig.union(signature_of(m.program))
    return sig


def iota(mp: ModularProgram) -> set:
    return {p for m in mp.modules for p in m.intensional}


def pi(mp: ModularProgram) -> set:
    return set(sigma(mp).predicates)


def conjunction(mp: ModularProgram) -> Program:
    rules = ()
    for m in mp.modules:
        rules += m.program.rules
    return Program(rules)


def as_module(p: Program, name: str = "main") -> DefModule:
    """A traditional program read as the single module SM_pi(p)[p]."""
    return DefModule(name, tuple(sorted(signature_of(p).predicates)), p)


def restrict(i: Interpretation, sig: Signature | Iterable[str]) -> Interpretation:
    """Drop the atoms whose predicate lies outside ``sig``; the universe is kept."""
    names = set(sig.predicates) if isinstance(sig, Signature) else set(sig)
    return Interpretation(i.universe, frozenset(a for a in i.true_atoms if a.name in names))


def _arities(mp: ModularProgram, extra: dict | None) -> dict:
    preds = dict(sigma(mp).predicates)
    for name, arity in (extra or {}).items():
        preds.setdefault(name, arity)
    return preds


def modular_stable_models(mp: ModularProgram, universe=None, *,
                          max_atoms: int = DEFAULT_MAX_ATOMS,
                          max_depth: int | None = None,
                          predicates: dict | None = None) -> list:
    """Interpretations over sigma(mp) that every module accepts.

    Each module is grounded over the universe of the whole program and
    checked on the restriction of the candidate to its own signature.
    """
    if universe is None:
        universe = herbrand_universe(sigma(mp), max_depth)
    universe = list(universe)
    arities = _arities(mp, predicates)
    parts = []
    for m in mp.modules:
        own = dict(signature_of(m.program).predicates)
        for p in m.intensional:
            if p in arities:
                own.setdefault(p, arities[p])
        g = ground(m.program, universe, own)
        parts.append(_Part(g, frozenset(m.intensional), g.atoms))
    base = herbrand_base(arities, universe)
    return stable_models_of_parts(parts, base, universe, max_atoms)
