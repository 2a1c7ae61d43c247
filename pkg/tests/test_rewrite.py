import random
from collections import Counter

import pytest

from modsm import (
    ProjectionError,
    ProjectionSpec,
    Variable,
    auto_project,
    decompose,
    fresh_name,
    p_stable_models,
    parse_program,
    project_program,
    project_rule,
    render,
    shift,
)

from conftest import S_FACTS, S_RULE, read
from generators import random_program


def bucket_multiset(rule):
    """Rule identity with body order ignored inside each polarity bucket."""
    return (frozenset(rule.head), frozenset(Counter(rule.pos).items()),
            frozenset(Counter(rule.neg).items()), frozenset(Counter(rule.negneg).items()))


def same_rules(p, q):
    return Counter(map(bucket_multiset, p.rules)) == Counter(map(bucket_multiset, q.rules))


def test_shift_examples():
    assert render(shift(parse_program("a ; b :- c. d."), {"a"})) == "a :- c, not b.\n:- not d.\n"
    p = parse_program("a ; b :- c.")
    assert shift(p, {"a", "b"}) == p


def test_shift_keeps_p_stable_models():
    rng = random.Random(41)
    for _ in range(60):
        p, sig = random_program(rng)
        preds = sorted(sig.predicates)
        intensional = set(rng.sample(preds, rng.randint(0, len(preds))))
        assert p_stable_models(shift(p, intensional), intensional, predicates=sig.predicates) \
            == p_stable_models(p, intensional)


def test_shift_heads_are_intensional():
    rng = random.Random(43)
    for _ in range(60):
        p, sig = random_program(rng)
        intensional = set(rng.sample(sorted(sig.predicates), 1))
        assert all(a.name in intensional for r in shift(p, intensional).rules for a in r.head)


def test_decompose_running_rule():
    rule = parse_program(S_RULE).rules[0]
    parts = decompose(rule, ["Y"])
    assert [str(a) for _, a in parts.alpha] == ["q(X,Y)", "r(X,Y)"]
    assert [str(a) for _, a in parts.beta] == ["p(Z)"]
    assert parts.y == (Variable("X"),)
    assert [str(a) for a in parts.gamma] == ["s(X,Z)"]


def test_project_running_rule():
    rule = parse_program(S_RULE).rules[0]
    r1, r2 = project_rule(rule, ["Y"], "t")
    expected = parse_program("s(X,Z) :- t(X), p(Z). t(X) :- q(X,Y), r(X,Y).")
    assert (r1, r2) == expected.rules


def test_project_connectivity_constraint_twice():
    p = parse_program(read("connect.lp"))
    out = project_program(p, [ProjectionSpec(0, ("Z",), "vertex1"),
                              ProjectionSpec(0, ("Z'",), "vertex2")])
    expected = parse_program(":- not r(X,Y), vertex1(X), vertex2(Y)."
                             " vertex1(X) :- edge(X,Z). vertex2(Y) :- edge(Z',Y).")
    assert same_rules(out, expected)


def test_project_rejects_bad_specs():
    p = parse_program(S_RULE + "p(2).")
    bad = [
        ProjectionSpec(0, ("Y",), "p"),     # reused predicate
        ProjectionSpec(5, ("Y",), "t"),     # stale index
        ProjectionSpec(0, ("X",), "t"),     # head variable
        ProjectionSpec(0, ("W",), "t"),     # not in body
        ProjectionSpec(1, ("Y",), "t"),     # fact has no such variable
    ]
    for spec in bad:
        with pytest.raises(ProjectionError):
            project_program(p, [spec])


def test_project_rejects_function_symbol_clash():
    with pytest.raises(ProjectionError):
        project_program(parse_program("s(X) :- q(X, Y), p(f(Y))."), [ProjectionSpec(0, ("Y",), "f")])


def test_fresh_name():
    assert fresh_name("t", set()) == "t"
    assert fresh_name("t", {"t", "t_1"}) == "t_2"


def test_auto_project():
    out, specs = auto_project(parse_program(S_RULE + S_FACTS))
    assert specs == (ProjectionSpec(0, ("Y",), "t"),)
    assert same_rules(out, parse_program("s(X,Z) :- t(X), p(Z). t(X) :- q(X,Y), r(X,Y)." + S_FACTS))

    out, specs = auto_project(parse_program(read("connect.lp")))
    assert [s.vars for s in specs] == [("Z",), ("Z'",)]
    assert len(out.rules) == 3


def test_auto_project_leaves_ground_programs():
    p = parse_program(S_FACTS)
    out, specs = auto_project(p)
    assert out == p and specs == ()
