"""Bounded, exhaustive checks of equivalence, conservative extension,
splitting, shift invariance and projection.

Every check grounds both sides over the same finite Herbrand universes
and compares model sets directly.  A pass only covers the universes
listed in the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BoundExceeded, GroundingError
from .ground import universe_from_names
from .modular import (
    DefModule,
    ModularProgram,
    conjunction,
    iota,
    modular_stable_models,
    restrict,
    sigma,
)
from .rewrite import ProjectionSpec, fresh_name, project_program, shift
from .stable import Interpretation, model_key, p_stable_models
from .structure import is_coherent
from .syntax import Program, Signature, signature_of

DEFAULT_MAX_ATOMS = 20

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Report:
    check: str
    verdict: str = PASS
    universes_checked: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    stats: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    precondition: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1}.get(self.verdict, 2)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "bounded": True,
            "universes": [list(u) for u in self.universes_checked],
            "witnesses": self.witnesses,
            "stats": self.stats,
            "precondition": self.precondition,
            "notes": self.notes,
        }

    def text(self) -> str:
        verdict = f"{self.verdict} (bounded)" if self.verdict == PASS else self.verdict
        lines = [f"check: {self.check}", f"verdict: {verdict}"]
        for u, st in zip(self.universes_checked, self.stats):
            counts = ", ".join(f"{k} {v}" for k, v in st.items() if k != "universe")
            lines.append(f"universe {{{', '.join(u)}}}: {counts}")
        for p in self.precondition:
            lines.append(f"precondition violated: {p}")
        for w in self.witnesses:
            models = "; ".join("{" + ", ".join(m) + "}" for m in w["models"])
            lines.append(f"witness [{w['clause']}] universe {{{', '.join(w['universe'])}}}: {models}")
            if w.get("detail"):
                lines.append(f"  {w['detail']}")
        for n in self.notes:
            lines.append(f"note: {n}")
        return "\n".join(lines) + "\n"


# universes


def _symbols(sigs: Iterable[Signature]) -> Signature:
    out = Signature()
    for s in sigs:
        out = out.union(s)
    return out


def resolve_universes(sig: Signature, universes=None, extra_constants: int = 0) -> list:
    """Constant-name sets to check.

    Default: the signature's own constants, then the same set widened by
    1..``extra_constants`` fresh constants.  A signature without constants
    gets one fresh constant so that the universe is non-empty.
    """
    if universes is not None:
        return [sorted(set(u)) for u in universes]
    base = list(sig.constants)
    taken = set(sig.functions) | set(sig.predicates)
    fresh = []
    while len(fresh) < extra_constants + (0 if base else 1):
        name = fresh_name("c", taken | set(fresh))
        fresh.append(name)
    if not base:
        base, fresh = fresh[:1], fresh[1:]
    out = [sorted(base)]
    for k in range(1, len(fresh) + 1):
        out.append(sorted(base + fresh[:k]))
    return out


def _terms(names, sig: Signature, max_depth):
    return universe_from_names(names, sig.functions, max_depth)


def _module_arities(m: DefModule, extra: dict) -> dict:
    preds = dict(signature_of(m.program).predicates)
    for p in m.intensional:
        if p not in preds and p in extra:
            preds[p] = extra[p]
    return preds


def _pick(models: Iterable) -> list:
    return sorted(models, key=lambda atoms: (len(atoms), model_key(atoms)))


def _keys(models) -> list:
    return [list(model_key(m)) for m in models]


# conservative extension core


def _ce_compare(small_models: list, big_models: list, small_preds: set, universe: list) -> list:
    small_sets = {m.true_atoms for m in small_models}
    image: dict = {}
    for m in big_models:
        image.setdefault(restrict(m, small_preds).true_atoms, []).append(m.true_atoms)
    witnesses = []
    missing = _pick(small_sets - set(image))
    if missing:
        witnesses.append({
            "universe": universe, "clause": "coverage",
            "models": _keys(missing[:1]),
            "detail": "model of the smaller side is not the restriction of any model of the larger side",
        })
    extra = _pick(set(image) - small_sets)
    if extra:
        source = _pick(image[extra[0]])[0]
        witnesses.append({
            "universe": universe, "clause": "soundness",
            "models": _keys([source, extra[0]]),
            "detail": "model of the larger side restricts to a non-model of the smaller side",
        })
    clashes = [sorted(ms, key=lambda a: (len(a), model_key(a)))
               for r, ms in image.items() if len(ms) > 1]
    if clashes:
        clashes.sort(key=lambda ms: (len(ms[0]), model_key(ms[0])))
        witnesses.append({
            "universe": universe, "clause": "injectivity",
            "models": _keys(clashes[0][:2]),
            "detail": "distinct models of the larger side share a restriction",
        })
    return witnesses


def _finish(report: Report) -> Report:
    if report.precondition and report.verdict != FAIL:
        report.verdict = INCONCLUSIVE
    elif report.witnesses:
        report.verdict = FAIL
    return report


def check_conservative_extension(small: DefModule, big: DefModule, universes=None, *,
                                 extra_constants: int = 0,
                                 max_atoms: int = DEFAULT_MAX_ATOMS,
                                 max_depth: int | None = None,
                                 check: str = "conservative-extension") -> Report:
    report = Report(check)
    s_sig, b_sig = signature_of(small.program), signature_of(big.program)
    small_preds = set(s_sig.predicates) | set(small.intensional)
    big_preds = set(b_sig.predicates) | set(big.intensional)
    if not small_preds <= big_preds:
        report.precondition.append(
            "predicates of the smaller module missing from the larger: "
            + ", ".join(sorted(small_preds - big_preds)))
    if s_sig.functions != b_sig.functions:
        report.precondition.append("the modules do not share the same function symbols")
    if not set(small.intensional) <= set(big.intensional):
        report.precondition.append("intensional predicates of the smaller module must stay intensional")
    extras = set(big.intensional) - set(small.intensional)
    if extras & small_preds:
        report.precondition.append(
            "new intensional predicates must be new symbols: " + ", ".join(sorted(extras & small_preds)))
    if report.precondition:
        return _finish(report)
    sig = s_sig.union(b_sig)
    arities = dict(sig.predicates)
    for names in resolve_universes(sig, universes, extra_constants):
        try:
            universe = _terms(names, sig, max_depth)
            small_models = p_stable_models(small.program, small.intensional, universe,
                                           predicates=_module_arities(small, arities),
                                           max_atoms=max_atoms)
            big_models = p_stable_models(big.program, big.intensional, universe,
                                         predicates=_module_arities(big, arities),
                                         max_atoms=max_atoms)
        except (BoundExceeded, GroundingError) as exc:
            report.verdict = INCONCLUSIVE
            report.notes.append(f"universe {{{', '.join(names)}}} skipped: {exc}")
            continue
        report.universes_checked.append(names)
        report.stats.append({"universe": names, "small_models": len(small_models),
                             "big_models": len(big_models)})
        report.witnesses.extend(_ce_compare(small_models, big_models, small_preds, names))
    return _finish(report)


def check_modular_ce(small: ModularProgram, big: ModularProgram, universes=None, *,
                     extra_constants: int = 0, max_atoms: int = DEFAULT_MAX_ATOMS,
                     max_depth: int | None = None,
                     check: str = "modular-conservative-extension") -> Report:
    """Is ``big`` a conservative extension of ``small`` (both modular programs)?"""
    report = Report(check)
    s_sig, b_sig = sigma(small), sigma(big)
    small_preds = set(s_sig.predicates)
    if not small_preds <= set(b_sig.predicates):
        report.precondition.append(
            "predicates of the smaller program missing from the larger: "
            + ", ".join(sorted(small_preds - set(b_sig.predicates))))
    if s_sig.functions != b_sig.functions:
        report.precondition.append("the programs do not share the same function symbols")
    if report.precondition:
        return _finish(report)
    sig = s_sig.union(b_sig)
    for names in resolve_universes(sig, universes, extra_constants):
        try:
            universe = _terms(names, sig, max_depth)
            small_models = modular_stable_models(small, universe, max_atoms=max_atoms)
            big_models = modular_stable_models(big, universe, max_atoms=max_atoms)
        except (BoundExceeded, GroundingError) as exc:
            report.verdict = INCONCLUSIVE
            report.notes.append(f"universe {{{', '.join(names)}}} skipped: {exc}")
            continue
        report.universes_checked.append(names)
        report.stats.append({"universe": names, "small_models": len(small_models),
                             "big_models": len(big_models)})
        report.witnesses.extend(_ce_compare(small_models, big_models, small_preds, names))
    return _finish(report)


def ce_in_context(small: DefModule, big: DefModule, context: ModularProgram, universes=None,
                  **kwargs) -> Report:
    """Replace ``small`` by ``big`` inside ``context`` and check the result extends the original."""
    new = set(big.intensional) - set(small.intensional)
    clash = new & set(sigma(context).predicates)
    if clash:
        report = Report("conservative-extension-in-context")
        report.precondition.append(
            "context mentions the new predicate(s) " + ", ".join(sorted(clash)))
        return _finish(report)
    return check_modular_ce(ModularProgram(context.modules + (small,)),
                            ModularProgram(context.modules + (big,)),
                            universes, check="conservative-extension-in-context", **kwargs)


# equivalence-style checks


def _compare_sets(left: list, right: list, universe: list, labels=("left", "right")) -> list:
    a = {m.true_atoms for m in left}
    b = {m.true_atoms for m in right}
    witnesses = []
    for side, diff in ((labels[0], a - b), (labels[1], b - a)):
        picked = _pick(diff)
        if picked:
            witnesses.append({
                "universe": universe, "clause": f"only-{side}",
                "models": _keys(picked[:1]),
                "detail": f"stable model found only on the {side} side",
            })
    return witnesses


def check_equivalence(m1: DefModule, m2: DefModule, universes=None, *,
                      extra_constants: int = 0, max_atoms: int = DEFAULT_MAX_ATOMS,
                      max_depth: int | None = None, check: str = "equivalence") -> Report:
    report = Report(check)
    if set(m1.intensional) != set(m2.intensional):
        report.precondition.append("the modules have different intensional predicates")
        return _finish(report)
    sig = signature_of(m1.program).union(signature_of(m2.program))
    arities = dict(sig.predicates)
    for names in resolve_universes(sig, universes, extra_constants):
        try:
            universe = _terms(names, sig, max_depth)
            left = p_stable_models(m1.program, m1.intensional, universe,
                                   predicates=arities, max_atoms=max_atoms)
            right = p_stable_models(m2.program, m2.intensional, universe,
                                    predicates=arities, max_atoms=max_atoms)
        except (BoundExceeded, GroundingError) as exc:
            report.verdict = INCONCLUSIVE
            report.notes.append(f"universe {{{', '.join(names)}}} skipped: {exc}")
            continue
        report.universes_checked.append(names)
        report.stats.append({"universe": names, "left_models": len(left),
                             "right_models": len(right)})
        report.witnesses.extend(_compare_sets(left, right, names))
    return _finish(report)


def check_shift(p: Program, intensional: Iterable[str], universes=None, **kwargs) -> Report:
    tuple_ = tuple(sorted(set(intensional)))
    return check_equivalence(DefModule("original", tuple_, p),
                             DefModule("shifted", tuple_, shift(p, tuple_)),
                             universes, check="shift", **kwargs)


def check_splitting(mp: ModularProgram, universes=None, *, extra_constants: int = 0,
                    max_atoms: int = DEFAULT_MAX_ATOMS, max_depth: int | None = None) -> Report:
    """Compare the modular stable models with the iota-stable models of the conjunction."""
    report = Report("splitting")
    coherent = is_coherent(mp)
    if not coherent:
        report.precondition.append("program is not coherent")
        report.notes.extend(coherent.diagnostics)
    sig = sigma(mp)
    whole = conjunction(mp)
    for names in resolve_universes(sig, universes, extra_constants):
        try:
            universe = _terms(names, sig, max_depth)
            modular = modular_stable_models(mp, universe, max_atoms=max_atoms)
            flat = p_stable_models(whole, iota(mp), universe, predicates=dict(sig.predicates),
                                   max_atoms=max_atoms)
        except (BoundExceeded, GroundingError) as exc:
            report.verdict = INCONCLUSIVE
            report.notes.append(f"universe {{{', '.join(names)}}} skipped: {exc}")
            continue
        report.universes_checked.append(names)
        report.stats.append({"universe": names, "modular_models": len(modular),
                             "conjunction_models": len(flat)})
        report.witnesses.extend(_compare_sets(modular, flat, names, ("modular", "conjunction")))
    if report.precondition and report.witnesses:
        report.notes.append("the two sides differ (expected to be possible without coherence)")
    return _finish(report)


def check_projection_result(original: Program, projected: Program, universes=None,
                            **kwargs) -> Report:
    """CE check of a rewritten program against the original, both read as def-modules."""
    orig_preds = set(signature_of(original).predicates)
    fresh = set(signature_of(projected).predicates) - orig_preds
    small = DefModule("original", tuple(sorted(orig_preds)), original)
    big = DefModule("projected", tuple(sorted(orig_preds | fresh)), projected)
    return check_conservative_extension(small, big, universes, check="projection", **kwargs)


def check_projection(p: Program, specs: Sequence[ProjectionSpec], universes=None,
                     **kwargs) -> Report:
    return check_projection_result(p, project_program(p, specs), universes, **kwargs)
