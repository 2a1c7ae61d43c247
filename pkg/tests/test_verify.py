import random

from modsm import (
    DefModule,
    ModularProgram,
    Program,
    ProjectionSpec,
    ce_in_context,
    check_conservative_extension,
    check_equivalence,
    check_modular_ce,
    check_projection,
    check_projection_result,
    check_shift,
    check_splitting,
    parse_modular,
    parse_program,
    project_program,
    project_rule,
    signature_of,
)
from modsm.verify import resolve_universes

from conftest import S_FACTS, S_RULE, read
from generators import random_program, random_projection_case


def module(name, intensional, text):
    return DefModule(name, tuple(intensional), parse_program(text))


def test_choice_rule_extension():
    small = module("small", "p", "{p}.")
    big = module("big", ["p", "p_hat"], "p :- not p_hat. p_hat :- not p.")
    report = check_conservative_extension(small, big, [["a"], ["a", "b"]])
    assert report.verdict == "pass"
    assert report.universes_checked == [["a"], ["a", "b"]]
    assert [(s["small_models"], s["big_models"]) for s in report.stats] == [(2, 2), (2, 2)]


def test_coverage_witness():
    # q :- not q has no stable model, so {p} is not covered
    report = check_conservative_extension(module("s", "p", "p."),
                                          module("b", "pq", "p. q :- not q."))
    assert report.verdict == "fail" and report.exit_code == 1
    assert [(w["clause"], w["models"]) for w in report.witnesses] == [("coverage", [["p"]])]


def test_injectivity_witness():
    # {p} and {p, q} both restrict to {p}
    report = check_conservative_extension(module("s", "p", "p."),
                                          module("b", "pq", "p. {q}."))
    assert [(w["clause"], w["models"]) for w in report.witnesses] == \
        [("injectivity", [["p"], ["p", "q"]])]


def test_soundness_witness():
    # small has only the empty model; {p, q} restricts to {p}
    report = check_conservative_extension(module("s", "p", "{p}. :- p."),
                                          module("b", "pq", "{p}. q."))
    assert [(w["clause"], w["models"]) for w in report.witnesses] == \
        [("soundness", [["p", "q"], ["p"]])]


def test_precondition_failures_are_inconclusive():
    report = check_conservative_extension(module("s", "p", "p. r."), module("b", "pq", "p. q."))
    assert report.verdict == "inconclusive" and report.exit_code == 2
    assert report.precondition
    report = check_conservative_extension(module("s", "p", "p(a)."), module("b", "p", "p(b)."))
    assert report.verdict == "inconclusive"


def test_bound_exceeded_is_inconclusive():
    hc = parse_program(read("hc_square.lp"))
    report = check_equivalence(DefModule("a", ("in", "r"), hc), DefModule("b", ("in", "r"), hc))
    assert report.verdict == "inconclusive"
    assert report.notes and not report.universes_checked


def test_equivalence():
    report = check_equivalence(module("a", "p", "p."), module("b", "p", ""))
    assert report.verdict == "fail"
    # left has only {p}, the empty program only the empty model
    assert [(w["clause"], w["models"]) for w in report.witnesses] == \
        [("only-left", [["p"]]), ("only-right", [[]])]
    assert check_equivalence(module("a", "p", "p."), module("b", "p", "p :- not not p. p.")).passed


def test_equivalence_is_reflexive_and_symmetric():
    rng = random.Random(47)
    for _ in range(40):
        p1, sig1 = random_program(rng, max_base=8)
        p2, _ = random_program(rng, max_base=8)
        preds = tuple(sorted(sig1.predicates))
        a, b = DefModule("a", preds, p1), DefModule("b", preds, p2)
        assert check_equivalence(a, a).passed
        ab, ba = check_equivalence(a, b), check_equivalence(b, a)
        assert ab.verdict == ba.verdict


def test_universes():
    sig = signature_of(parse_program(S_FACTS))
    assert resolve_universes(sig) == [["1", "2"]]
    assert resolve_universes(sig, extra_constants=2) == [["1", "2"], ["1", "2", "c"], ["1", "2", "c", "c_1"]]
    assert resolve_universes(signature_of(parse_program("p."))) == [["c"]]


def test_shift_check():
    report = check_shift(parse_program(S_RULE + S_FACTS), {"s"})
    assert report.passed


def test_splitting():
    assert check_splitting(parse_modular(read("s.mlp"))).passed
    report = check_splitting(parse_modular(read("noncoherent.mlp")))
    assert report.verdict == "inconclusive"
    assert report.precondition
    assert [(w["clause"], w["models"]) for w in report.witnesses] == \
        [("only-modular", [["p(1)", "q(1)"]])]


def test_projection_of_running_rule():
    p = parse_program(S_RULE + S_FACTS)
    report = check_projection(p, [ProjectionSpec(0, ("Y",), "t")])
    assert report.passed
    assert [(s["small_models"], s["big_models"]) for s in report.stats] == [(1, 1)]


def test_projection_mutation_reused_predicate():
    # using p as the auxiliary predicate adds p(1), which changes s
    p = parse_program(S_RULE + S_FACTS)
    r1, r2 = project_rule(p.rules[0], ["Y"], "p")
    mutated = Program((r1, r2) + p.rules[1:])
    report = check_projection_result(p, mutated)
    assert report.verdict == "fail" and report.witnesses


def test_projection_mutation_leaked_variable():
    # r(X,Y) left in the first rule: s(2,2) appears through r(2,1)
    p = parse_program(S_RULE + S_FACTS)
    mutated = parse_program("s(X,Z) :- t(X), p(Z), r(X,Y). t(X) :- q(X,Y)." + S_FACTS)
    report = check_projection_result(p, mutated)
    assert report.verdict == "fail"
    clauses = {w["clause"] for w in report.witnesses}
    assert "soundness" in clauses or "coverage" in clauses


def test_random_projections_pass():
    rng = random.Random(53)
    for _ in range(40):
        p, index, xs = random_projection_case(rng)
        assert check_projection(p, [ProjectionSpec(index, xs, "t")]).passed


def test_projection_chains_compose():
    # projecting twice is still a conservative extension of the original
    p = parse_program(read("connect.lp") + "edge(a,b). edge(b,c).")
    once = project_program(p, [ProjectionSpec(0, ("Z",), "vertex1")])
    twice = project_program(once, [ProjectionSpec(0, ("Z'",), "vertex2")])
    assert check_projection_result(p, once).passed
    assert check_projection_result(once, twice).passed
    assert check_projection_result(p, twice).passed


def test_modular_ce_of_projected_programs():
    report = check_modular_ce(parse_modular(read("s.mlp")), parse_modular(read("s_projected.mlp")))
    assert report.passed


def test_ce_in_context():
    context = ModularProgram((module("use", "r", "r :- p."),))
    small = module("small", "p", "{p}.")
    big = module("big", ["p", "p_hat"], "p :- not p_hat. p_hat :- not p.")
    assert ce_in_context(small, big, context).passed
    clash = ModularProgram((module("use", "r", "r :- p_hat."),))
    assert ce_in_context(small, big, clash).verdict == "inconclusive"


def test_report_serialization():
    report = check_conservative_extension(module("s", "p", "p."), module("b", "pq", "p. {q}."))
    data = report.to_json()
    assert data["verdict"] == "fail" and data["bounded"] is True
    text = report.text()
    assert "verdict: fail" in text and "witness [injectivity]" in text
    ok = check_shift(parse_program(S_RULE + S_FACTS), {"s"})
    assert "verdict: pass (bounded)" in ok.text()
