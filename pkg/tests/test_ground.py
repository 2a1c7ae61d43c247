import itertools

import pytest

from modsm import (
    Constant,
    Function,
    InfiniteUniverseError,
    NoConstantError,
    Predicate,
    ground,
    herbrand_universe,
    instances,
    parse_program,
    signature_of,
    simplify_equalities,
)
from modsm.ground import herbrand_base, universe_from_names

from conftest import S_FACTS, S_RULE

ONE, TWO = Constant("1"), Constant("2")


def test_universe_of_running_example():
    sig = signature_of(parse_program(S_RULE + S_FACTS))
    assert set(herbrand_universe(sig)) == {ONE, TWO}


def test_universe_single_constant():
    assert herbrand_universe(signature_of(parse_program("p(a)."))) == [Constant("a")]


def test_universe_depth_bound():
    sig = signature_of(parse_program("p(f(a))."))
    a = Constant("a")
    assert set(herbrand_universe(sig, 2)) == {a, Function("f", (a,)), Function("f", (Function("f", (a,)),))}
    assert set(herbrand_universe(sig, 0)) == {a}


def test_universe_errors():
    with pytest.raises(InfiniteUniverseError):
        herbrand_universe(signature_of(parse_program("p(f(a)).")))
    with pytest.raises(NoConstantError):
        herbrand_universe(signature_of(parse_program("p :- q.")))


def test_eight_instances_of_the_rule():
    rule = parse_program(S_RULE).rules[0]
    out = instances(rule, [ONE, TWO])
    assert len(out) == 8
    # each instance is a distinct substitution of (X, Y, Z)
    heads = sorted((str(r.head[0]), str(r.pos[1])) for r in out)
    expected = sorted((f"s({x},{z})", f"q({x},{y})")
                      for x, y, z in itertools.product("12", repeat=3))
    assert heads == expected


def test_instances_count_is_universe_power():
    rule = parse_program("p(X) :- q(X, Y), r(Z).").rules[0]
    for n in range(1, 4):
        u = universe_from_names([str(k) for k in range(n)])
        assert len(instances(rule, u)) == n ** 3


def test_ground_running_example():
    g = ground(parse_program(S_RULE + S_FACTS))
    assert len(g.rules) == 15
    assert len([r for r in g.rules if r.pos]) == 8
    assert len(g.atoms) == 2 + 4 + 4 + 4


def test_equality_elimination():
    # substitution oracle: X=1 gives "not 1 = 1" (instance dropped), X=2 keeps the constraint
    g = ground(parse_program("q(1). :- q(X), not X = 1."), [ONE, TWO])
    rendered = sorted((tuple(map(str, r.head)), tuple(map(str, r.pos)))
                      for r in g.rules)
    assert rendered == [((), ("q(2)",)), (("q(1)",), ())]


def test_false_positive_equality_drops_instance():
    g = ground(parse_program("p(X) :- X = 1."), [ONE, TWO])
    assert [tuple(map(str, r.head)) for r in g.rules] == [("p(1)",)]
    assert g.rules[0].pos == ()


def test_simplify_equalities_directly():
    rule = parse_program("p :- 1 = 1, not 1 = 2, q.").rules[0]
    assert simplify_equalities(rule).pos == (Predicate("q"),)
    assert simplify_equalities(parse_program("p :- 1 = 2.").rules[0]) is None
    assert simplify_equalities(parse_program("p :- not 1 = 1.").rules[0]) is None


def test_ground_atoms_are_in_the_base():
    g = ground(parse_program(S_RULE + S_FACTS + "t(X) :- not s(X, X)."))
    for r in g.rules:
        assert set(r.atoms()) <= g.atoms


def test_herbrand_base_size():
    base = herbrand_base({"p": 1, "q": 2, "a": 0}, [ONE, TWO, Constant("3")])
    assert len(base) == 3 + 9 + 1


def test_ground_is_deterministic():
    text = S_RULE + S_FACTS
    assert ground(parse_program(text)).rules == ground(parse_program(text)).rules
