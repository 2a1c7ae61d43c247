"""p-stable models of ground programs through the F*(u) transform.

A candidate Herbrand interpretation I is p-stable for a ground program F
when I satisfies F and no assignment u to the intensional atoms with
u < I (pointwise below I, strictly below somewhere) satisfies F*(u).

``star_eval`` evaluates F*(u) clause by clause.  The stability test asks
the same question symbolically: ``star_residual`` partially evaluates
F*(u) under I, leaving a formula over the u-atoms, and a small DPLL
search decides whether some strictly smaller u satisfies it.  That search
is complete, so it agrees with the literal enumeration of every u, which
stays available as ``method="enumerate"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import _search
from .errors import BoundExceeded
from .ground import GroundProgram, GroundRule, ground, herbrand_universe
from .syntax import Predicate, Program, signature_of

DEFAULT_MAX_ATOMS = 24


# formulas


class _Bottom:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Bottom"

    def __reduce__(self):
        return (_Bottom, ())


Bottom = _Bottom()
BOTTOM = Bottom


@dataclass(frozen=True)
class AtomRef:
    atom: Predicate

    def __repr__(self) -> str:
        return f"AtomRef({self.atom})"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    antecedent: object
    consequent: object


TOP = Implies(Bottom, Bottom)


def neg(f) -> Implies:
    return Implies(f, Bottom)


def _conj(parts: Sequence):
    if not parts:
        return TOP
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def rule_to_formula(g: GroundRule):
    """``pos & ~neg & ~~negneg -> head`` as a formula tree."""
    body = (
        [AtomRef(a) for a in g.pos]
        + [neg(AtomRef(a)) for a in g.neg]
        + [neg(neg(AtomRef(a))) for a in g.negneg]
    )
    if not g.head:
        head = Bottom
    elif len(g.head) == 1:
        head = AtomRef(g.head[0])
    else:
        head = Or(tuple(AtomRef(a) for a in g.head))
    return Implies(_conj(body), head)


def program_formula(g: GroundProgram):
    return _conj([rule_to_formula(r) for r in g.rules])


# interpretations


def model_key(atoms: Iterable) -> tuple:
    return tuple(sorted(str(a) for a in atoms))


@dataclass(frozen=True)
class Interpretation:
    universe: frozenset
    true_atoms: frozenset

    def __post_init__(self):
        object.__setattr__(self, "universe", frozenset(self.universe))
        object.__setattr__(self, "true_atoms", frozenset(self.true_atoms))

    def __contains__(self, atom) -> bool:
        return atom in self.true_atoms

    def __iter__(self):
        return iter(sorted(self.true_atoms, key=str))

    def __len__(self) -> int:
        return len(self.true_atoms)

    def sort_key(self) -> tuple:
        return model_key(self.true_atoms)

    def atom_strings(self) -> list:
        return list(self.sort_key())

    def text(self) -> str:
        return "{" + ", ".join(self.sort_key()) + "}"

    __str__ = text


def _truth_set(i) -> frozenset:
    if isinstance(i, Interpretation):
        return i.true_atoms
    return frozenset(i)


def satisfies(i, f) -> bool:
    """Classical truth of ``f`` in the Herbrand interpretation ``i``."""
    true = _truth_set(i)
    return _sat(f, true)


def _sat(f, true) -> bool:
    if f is Bottom:
        return False
    if isinstance(f, AtomRef):
        return f.atom in true
    if isinstance(f, And):
        return all(_sat(p, true) for p in f.parts)
    if isinstance(f, Or):
        return any(_sat(p, true) for p in f.parts)
    if isinstance(f, Implies):
        return not _sat(f.antecedent, true) or _sat(f.consequent, true)
    raise TypeError(f"not a formula: {f!r}")


def star_eval(f, i, u, intensional) -> bool:
    """Truth of F*(u) where ``u`` gives the intensional atoms' values.

    ``u`` is a mapping atom -> bool or a collection of the atoms u makes
    true; atoms of other predicates are read from ``i``.
    """
    true = _truth_set(i)
    if isinstance(u, Mapping):
        u_true = frozenset(a for a, v in u.items() if v)
    else:
        u_true = frozenset(u)
    return _star(f, true, u_true, frozenset(intensional))


def _star(f, true, u_true, intensional) -> bool:
    if f is Bottom:
        return False
    if isinstance(f, AtomRef):
        if f.atom.name in intensional:
            return f.atom in u_true
        return f.atom in true
    if isinstance(f, And):
        return all(_star(p, true, u_true, intensional) for p in f.parts)
    if isinstance(f, Or):
        return any(_star(p, true, u_true, intensional) for p in f.parts)
    if isinstance(f, Implies):
        starred = (not _star(f.antecedent, true, u_true, intensional)
                   or _star(f.consequent, true, u_true, intensional))
        return starred and _sat(f, true)
    raise TypeError(f"not a formula: {f!r}")


# residual formulas over u-atoms (True/False fold away)


def _r_and(parts):
    out = []
    for p in parts:
        if p is False:
            return False
        if p is not True:
            out.append(p)
    if not out:
        return True
    return out[0] if len(out) == 1 else And(tuple(out))


def _r_or(parts):
    out = []
    for p in parts:
        if p is True:
            return True
        if p is not False:
            out.append(p)
    if not out:
        return False
    return out[0] if len(out) == 1 else Or(tuple(out))


def _r_implies(a, b):
    if a is False or b is True:
        return True
    if a is True:
        return b
    if b is False:
        return Implies(a, Bottom)
    return Implies(a, b)


def star_residual(f, i, intensional, candidates):
    """F*(u) with everything but ``u`` on ``candidates`` evaluated away.

    Intensional atoms outside ``candidates`` are taken as false in u
    (they are false in ``i`` and u must lie below it).
    """
    return _residual(f, _truth_set(i), frozenset(intensional), frozenset(candidates))


def _residual(f, true, intensional, candidates):
    if f is Bottom:
        return False
    if isinstance(f, AtomRef):
        if f.atom.name in intensional:
            return f if f.atom in candidates else False
        return f.atom in true
    if isinstance(f, And):
        return _r_and([_residual(p, true, intensional, candidates) for p in f.parts])
    if isinstance(f, Or):
        return _r_or([_residual(p, true, intensional, candidates) for p in f.parts])
    if isinstance(f, Implies):
        if not _sat(f, true):
            return False
        return _r_implies(_residual(f.antecedent, true, intensional, candidates),
                          _residual(f.consequent, true, intensional, candidates))
    raise TypeError(f"not a formula: {f!r}")


def _classical_residual(f, fixed: Mapping):
    """Substitute the fixed atoms' values into ``f``."""
    if f is Bottom:
        return False
    if isinstance(f, AtomRef):
        value = fixed.get(f.atom)
        return f if value is None else value
    if isinstance(f, And):
        return _r_and([_classical_residual(p, fixed) for p in f.parts])
    if isinstance(f, Or):
        return _r_or([_classical_residual(p, fixed) for p in f.parts])
    if isinstance(f, Implies):
        return _r_implies(_classical_residual(f.antecedent, fixed),
                          _classical_residual(f.consequent, fixed))
    raise TypeError(f"not a formula: {f!r}")


def _product(cnfs: list) -> list:
    """Disjunction of CNFs, distributed back into CNF."""
    if any(not c for c in cnfs):  # some disjunct is valid
        return []
    out = []
    for combo in itertools.product(*cnfs):
        lits = set()
        for clause in combo:
            lits.update(clause)
        if not any(-l in lits for l in lits):
            out.append(tuple(sorted(lits)))
    return out


def to_cnf(f, var_of: Mapping, positive: bool = True) -> list:
    """CNF (list of int tuples) of a residual formula; ``True`` gives [], ``False`` [()]."""
    if f is True or f is False:
        return [] if f is positive else [()]
    if f is Bottom:
        return [()] if positive else []
    if isinstance(f, AtomRef):
        v = var_of[f.atom]
        return [(v if positive else -v,)]
    if isinstance(f, And):
        if positive:
            return [c for p in f.parts for c in to_cnf(p, var_of, True)]
        return _product([to_cnf(p, var_of, False) for p in f.parts])
    if isinstance(f, Or):
        if positive:
            return _product([to_cnf(p, var_of, True) for p in f.parts])
        return [c for p in f.parts for c in to_cnf(p, var_of, False)]
    if isinstance(f, Implies):
        if positive:
            return _product([to_cnf(f.antecedent, var_of, False),
                             to_cnf(f.consequent, var_of, True)])
        return to_cnf(f.antecedent, var_of, True) + to_cnf(f.consequent, var_of, False)
    raise TypeError(f"not a formula: {f!r}")


# stability


def _formulas(g) -> list:
    if isinstance(g, GroundProgram):
        return [rule_to_formula(r) for r in g.rules]
    return list(g)


def is_p_stable(i, g: GroundProgram, intensional: Iterable[str], method: str = "search") -> bool:
    """Does ``i`` satisfy SM_p[g] for the intensional predicates ``p``?

    ``method="enumerate"`` tries every u strictly below i one by one;
    ``"search"`` (default) decides the same question with DPLL.
    """
    intensional = frozenset(intensional)
    true = _truth_set(i)
    formulas = _formulas(g)
    if not all(_sat(f, true) for f in formulas):
        return False
    candidates = sorted((a for a in true if a.name in intensional), key=str)
    if not candidates:
        return True
    if method == "enumerate":
        for size in range(len(candidates)):
            for u in itertools.combinations(candidates, size):
                u_true = frozenset(u)
                if all(_star(f, true, u_true, intensional) for f in formulas):
                    return False
        return True
    if method != "search":
        raise ValueError(f"unknown method {method!r}")
    var_of = {a: n for n, a in enumerate(candidates, 1)}
    cand = frozenset(candidates)
    clauses = []
    for f in formulas:
        res = _residual(f, true, intensional, cand)
        if res is False:
            return True  # F*(u) unsatisfiable for every u
        if res is not True:
            clauses.extend(to_cnf(res, var_of))
    clauses.append(tuple(-v for v in var_of.values()))  # u != I
    return _search.satisfiable(clauses, len(candidates)) is None


def possible_atoms(g: GroundProgram, intensional: Iterable[str]) -> frozenset:
    """Intensional atoms that can be true in some p-stable model.

    Least fixpoint of the positive parts of the rules, with every
    extensional atom treated as available.  An intensional atom outside
    the fixpoint is false in every p-stable model: the u that keeps only
    the fixpoint atoms of I satisfies F*(u).
    """
    intensional = frozenset(intensional)
    reached = set()
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if all(a.name not in intensional or a in reached for a in r.pos):
                for h in r.head:
                    if h.name in intensional and h not in reached:
                        reached.add(h)
                        changed = True
    return frozenset(reached)


@dataclass(frozen=True)
class _Part:
    ground: GroundProgram
    intensional: frozenset
    base: frozenset  # atoms of this part's signature


def stable_models_of_parts(parts: Sequence[_Part], base: frozenset, universe,
                           max_atoms: int = DEFAULT_MAX_ATOMS) -> list:
    """Interpretations over ``base`` whose restriction to each part is p-stable for it."""
    forced_false = set()
    for part in parts:
        reach = possible_atoms(part.ground, part.intensional)
        forced_false.update(a for a in part.base
                            if a.name in part.intensional and a not in reach)
    open_atoms = sorted(base - forced_false, key=str)
    if len(open_atoms) > max_atoms:
        raise BoundExceeded(len(open_atoms), max_atoms)
    var_of = {a: n for n, a in enumerate(open_atoms, 1)}
    fixed = {a: False for a in forced_false}
    clauses = []
    formulas = [(part, [rule_to_formula(r) for r in part.ground.rules]) for part in parts]
    for _, fs in formulas:
        for f in fs:
            res = _classical_residual(f, fixed)
            if res is False:
                return []
            if res is not True:
                clauses.extend(to_cnf(res, var_of))
    models = []
    for assignment in _search.iter_models(clauses, len(open_atoms)):
        true = frozenset(open_atoms[v - 1] for v, value in assignment.items() if value)
        if all(is_p_stable(true & part.base, fs, part.intensional)
               for part, fs in formulas):
            models.append(Interpretation(universe, true))
    return sorted(models, key=Interpretation.sort_key)


def p_stable_models(p: Program, intensional: Iterable[str], universe=None, *,
                    predicates: Mapping | None = None, max_atoms: int = DEFAULT_MAX_ATOMS,
                    max_depth: int | None = None) -> list:
    """Every Herbrand p-stable model of ``p`` over ``universe``, canonically sorted.

    ``predicates`` widens the signature with further predicate arities;
    their atoms are extensional unless named in ``intensional``.
    """
    if universe is None:
        universe = herbrand_universe(signature_of(p), max_depth)
    universe = list(universe)
    g = ground(p, universe, predicates)
    part = _Part(g, frozenset(intensional), g.atoms)
    return stable_models_of_parts([part], g.atoms, universe, max_atoms)


def answer_sets(p: Program, *, universe=None, max_atoms: int = DEFAULT_MAX_ATOMS,
                max_depth: int | None = None) -> list:
    """Answer sets as the pi(p)-stable Herbrand models of ``p``."""
    sig = signature_of(p)
    if universe is None:
        universe = herbrand_universe(sig, max_depth)
    return p_stable_models(p, set(sig.predicates), universe, max_atoms=max_atoms)
