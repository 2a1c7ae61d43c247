"""Tiny DPLL over clauses of signed integers (DIMACS style).

Only what the semantic core needs: enumerate every total model over a
fixed variable set, or find one.  Variables are ``1..n``.
"""

from __future__ import annotations

from typing import Iterator, Sequence


def _propagate(clauses: Sequence[tuple], assign: dict) -> bool:
    """Unit propagation in place; False on conflict."""
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            unassigned = None
            count = 0
            satisfied = False
            for lit in clause:
                value = assign.get(abs(lit))
                if value is None:
                    count += 1
                    unassigned = lit
                    if count > 1:
                        break
                elif value == (lit > 0):
                    satisfied = True
                    break
            if satisfied or count > 1:
                continue
            if count == 0:
                return False
            assign[abs(unassigned)] = unassigned > 0
            changed = True
    return True


def _pick(clauses: Sequence[tuple], assign: dict) -> int | None:
    for clause in clauses:
        if any(assign.get(abs(l)) == (l > 0) for l in clause):
            continue
        for lit in clause:
            if abs(lit) not in assign:
                return abs(lit)
    return None


def iter_models(clauses: Sequence[tuple], n: int) -> Iterator[dict]:
    """Yield every total assignment ``{var: bool}`` over ``1..n`` satisfying ``clauses``."""
    clauses = [tuple(c) for c in clauses]
    if any(len(c) == 0 for c in clauses):
        return

    def search(assign: dict):
        if not _propagate(clauses, assign):
            return
        var = _pick(clauses, assign)
        if var is None:
            free = [v for v in range(1, n + 1) if v not in assign]
            for mask in range(1 << len(free)):
                full = dict(assign)
                for bit, v in enumerate(free):
                    full[v] = bool(mask >> bit & 1)
                yield full
            return
        for value in (False, True):
            trial = dict(assign)
            trial[var] = value
            yield from search(trial)

    yield from search({})


def satisfiable(clauses: Sequence[tuple], n: int) -> dict | None:
    return next(iter_models(clauses, n), None)
