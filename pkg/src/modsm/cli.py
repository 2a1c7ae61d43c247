"""``modsm`` command line interface.

Exit codes: 0 success / pass, 1 failed check, 2 usage error, bad input or
inconclusive check, 3 enumeration bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import BoundExceeded, ModsmError, ModsmSyntaxError
from .ground import ground, herbrand_universe, universe_from_names
from .modular import ModularProgram, as_module, iota, modular_stable_models, pi, sigma
from .parser import parse_modular, parse_program, render, render_rules
from .rewrite import ProjectionSpec, auto_project, fresh_name, project_program, shift
from .stable import DEFAULT_MAX_ATOMS, answer_sets, p_stable_models
from .structure import dependency_graph, is_coherent, is_simple
from .syntax import Program, signature_of
from .verify import (
    DEFAULT_MAX_ATOMS as VERIFY_MAX_ATOMS,
    ce_in_context,
    check_conservative_extension,
    check_modular_ce,
    check_projection,
    check_projection_result,
    check_shift,
    check_splitting,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _csv(text: str | None) -> list:
    if not text:
        return []
    return [part.strip() for part in text.split(",") if part.strip()]


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_program(path: str) -> Program:
    return parse_program(_read(path), path)


def load_modular(path: str, as_module_flag: bool = False) -> ModularProgram:
    if path.endswith(".lp"):
        if not as_module_flag:
            raise UsageError(f"{path} is a traditional program; pass --as-module to read it "
                             "as a single def-module")
        return ModularProgram((as_module(load_program(path), Path(path).stem),))
    return parse_modular(_read(path), path)


def _universe(sig, constants: list, max_depth):
    names = set(sig.constants) | set(constants)
    if not names:
        return herbrand_universe(sig, max_depth)  # raises the no-constant error
    return universe_from_names(sorted(names), sig.functions, max_depth)


def _emit_models(models, as_json: bool, out) -> None:
    if as_json:
        json.dump({"models": [m.atom_strings() for m in models]}, out)
        out.write("\n")
    else:
        for m in models:
            out.write(m.text() + "\n")


# subcommands


def cmd_parse(args, out) -> int:
    if args.file.endswith(".mlp"):
        out.write(render(parse_modular(_read(args.file), args.file)))
    else:
        out.write(render(load_program(args.file)))
    return EXIT_OK


def cmd_ground(args, out) -> int:
    p = load_program(args.file)
    sig = signature_of(p)
    if not p.rules:
        return EXIT_OK
    universe = _universe(sig, _csv(args.constants), args.max_depth)
    g = ground(p, universe)
    out.write(render_rules(r.as_rule() for r in g.rules))
    return EXIT_OK


def cmd_solve(args, out) -> int:
    constants = _csv(args.constants)
    if args.modular or args.file.endswith(".mlp"):
        if args.intensional is not None:
            raise UsageError("--intensional does not apply to modular programs")
        mp = load_modular(args.file, as_module_flag=True)
        universe = _universe(sigma(mp), constants, args.max_depth)
        models = modular_stable_models(mp, universe, max_atoms=args.max_atoms)
    else:
        p = load_program(args.file)
        sig = signature_of(p)
        universe = _universe(sig, constants, args.max_depth)
        if args.intensional is not None:
            models = p_stable_models(p, _csv(args.intensional), universe,
                                     max_atoms=args.max_atoms)
        else:
            models = answer_sets(p, universe=universe, max_atoms=args.max_atoms)
    _emit_models(models, args.json, out)
    return EXIT_OK


def cmd_info(args, out) -> int:
    mp = load_modular(args.file, args.as_module)
    sig = sigma(mp)
    data = {
        "sigma": {"functions": dict(sorted(sig.functions.items())),
                  "predicates": dict(sorted(sig.predicates.items()))},
        "pi": sorted(pi(mp)),
        "iota": sorted(iota(mp)),
        "modules": [{"name": m.name, "intensional": list(m.intensional),
                     "rules": len(m.program.rules)} for m in mp.modules],
    }
    if args.json:
        json.dump(data, out)
        out.write("\n")
        return EXIT_OK
    fs = ", ".join(f"{n}/{a}" for n, a in data["sigma"]["functions"].items())
    ps = ", ".join(f"{n}/{a}" for n, a in data["sigma"]["predicates"].items())
    out.write(f"functions: {{{fs}}}\n")
    out.write(f"predicates: {{{ps}}}\n")
    out.write(f"pi: {{{', '.join(data['pi'])}}}\n")
    out.write(f"iota: {{{', '.join(data['iota'])}}}\n")
    for m in data["modules"]:
        out.write(f"module {m['name']}: {{{', '.join(m['intensional'])}}} ({m['rules']} rules)\n")
    return EXIT_OK


def _scc_text(comps) -> str:
    return ", ".join("{" + ", ".join(sorted(c)) + "}" for c in comps)


def cmd_coherence(args, out) -> int:
    mp = load_modular(args.file, args.as_module)
    simple = is_simple(mp)
    verdict = is_coherent(mp)
    if args.json:
        json.dump({"coherent": verdict.ok, "simple": simple.ok,
                   "sccs": [sorted(c) for c in verdict.sccs],
                   "diagnostics": verdict.diagnostics}, out)
        out.write("\n")
    else:
        out.write(f"coherent: {'yes' if verdict.ok else 'no'}\n")
        out.write(f"simple: {'yes' if simple.ok else 'no'}\n")
        if simple.ok:
            out.write(f"sccs: {_scc_text(verdict.sccs)}\n")
        for d in verdict.diagnostics:
            out.write(f"diagnostic: {d}\n")
    return EXIT_OK if verdict.ok else EXIT_FAIL


def cmd_depgraph(args, out) -> int:
    mp = load_modular(args.file, args.as_module)
    g = dependency_graph(mp)
    if args.json:
        json.dump({"vertices": sorted(g.vertices), "edges": [list(e) for e in sorted(g.edges)]}, out)
        out.write("\n")
    elif args.dot:
        out.write(g.to_dot())
    else:
        out.write(f"vertices: {', '.join(sorted(g.vertices))}\n")
        for u, w in sorted(g.edges):
            out.write(f"{u} -> {w}\n")
    return EXIT_OK


def cmd_shift(args, out) -> int:
    p = load_program(args.file)
    out.write(render(shift(p, _csv(args.intensional))))
    return EXIT_OK


def _projection_specs(args, p: Program) -> list:
    if args.rule is None or not args.vars:
        raise UsageError("projection needs --rule and --vars (or --auto)")
    sig = signature_of(p)
    fresh = args.pred or fresh_name("t", set(sig.predicates) | set(sig.functions))
    return [ProjectionSpec(args.rule, tuple(_csv(args.vars)), fresh)]


def cmd_project(args, out) -> int:
    p = load_program(args.file)
    if args.auto:
        projected, _ = auto_project(p, args.pred or "t")
    else:
        projected = project_program(p, _projection_specs(args, p))
    out.write(render(projected))
    return EXIT_OK


def _report(report, args, out) -> int:
    if args.json:
        json.dump(report.to_json(), out)
        out.write("\n")
    else:
        out.write(report.text())
    return report.exit_code


def _universes(sig, args):
    constants = _csv(getattr(args, "constants", None))
    if not constants:
        return None
    return [sorted(set(sig.constants) | set(constants))]


def cmd_verify(args, out) -> int:
    opts = {"max_atoms": args.max_atoms, "max_depth": args.max_depth,
            "extra_constants": args.extra_constants}
    if args.check == "ce":
        small = load_modular(args.small, args.as_module)
        big = load_modular(args.big, args.as_module)
        if args.context:
            context = load_modular(args.context, args.as_module)
            if len(small) != 1 or len(big) != 1:
                raise UsageError("with --context, SMALL and BIG must each hold one module")
            sig = sigma(ModularProgram(context.modules + small.modules + big.modules))
            report = ce_in_context(small.modules[0], big.modules[0], context,
                                   _universes(sig, args), **opts)
        elif len(small) == 1 and len(big) == 1:
            sig = sigma(ModularProgram(small.modules + big.modules))
            report = check_conservative_extension(small.modules[0], big.modules[0],
                                                  _universes(sig, args), **opts)
        else:
            sig = sigma(ModularProgram(small.modules + big.modules))
            report = check_modular_ce(small, big, _universes(sig, args), **opts)
    elif args.check == "split":
        mp = load_modular(args.file, args.as_module)
        report = check_splitting(mp, _universes(sigma(mp), args), **opts)
    elif args.check == "shift":
        p = load_program(args.file)
        if args.intensional is None:
            raise UsageError("verify shift needs --intensional")
        report = check_shift(p, _csv(args.intensional), _universes(signature_of(p), args), **opts)
    else:
        p = load_program(args.file)
        universes = _universes(signature_of(p), args)
        if args.auto:
            projected, _ = auto_project(p, args.pred or "t")
            report = check_projection_result(p, projected, universes, **opts)
        else:
            report = check_projection(p, _projection_specs(args, p), universes, **opts)
    return _report(report, args, out)


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modsm",
        description="Modular logic programs: parse, ground, solve, analyse, rewrite, verify.",
    )
    parser.add_argument("--version", action="version", version=f"modsm {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p.set_defaults(func=func)
        return p

    def bounds(p, default):
        p.add_argument("--max-atoms", type=int, default=default,
                       help=f"largest number of open ground atoms to enumerate (default {default})")
        p.add_argument("--max-depth", type=int, default=None,
                       help="function nesting depth bounding the Herbrand universe")

    sub.add_parser("help", help="show this help")

    p = add("parse", cmd_parse, "parse a program and print it in canonical form")
    p.add_argument("file")

    p = add("ground", cmd_ground, "print the ground program, rules sorted")
    p.add_argument("file")
    p.add_argument("--constants", help="extra object constants, comma separated")
    p.add_argument("--max-depth", type=int, default=None)

    p = add("solve", cmd_solve, "print answer sets, p-stable models or modular stable models")
    p.add_argument("file")
    p.add_argument("--modular", action="store_true", help="read FILE as a modular program")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--intensional", help="intensional predicates, comma separated")
    group.add_argument("--all-intensional", action="store_true",
                       help="every predicate intensional (answer sets; the default)")
    p.add_argument("--constants", help="extra object constants, comma separated")
    p.add_argument("--json", action="store_true")
    bounds(p, DEFAULT_MAX_ATOMS)

    for name, func, help_ in (
        ("info", cmd_info, "print sigma, pi, iota and the modules' intensional tuples"),
        ("coherence", cmd_coherence, "decide simplicity and coherence"),
        ("depgraph", cmd_depgraph, "print the dependency graph"),
    ):
        p = add(name, func, help_)
        p.add_argument("file")
        p.add_argument("--as-module", action="store_true",
                       help="read a .lp file as one module intensional in all its predicates")
        p.add_argument("--json", action="store_true")
        if name == "depgraph":
            p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")

    p = add("shift", cmd_shift, "move non-intensional head atoms into the body")
    p.add_argument("file")
    p.add_argument("--intensional", required=True)

    p = add("project", cmd_project, "project variables out of a rule")
    p.add_argument("file")
    p.add_argument("--rule", type=int, help="0-based rule index")
    p.add_argument("--vars", help="variables to project, comma separated")
    p.add_argument("--pred", help="fresh predicate name (default t, or a free variant)")
    p.add_argument("--auto", action="store_true", help="choose projections automatically")

    p = add("verify", cmd_verify, "bounded checks: ce, split, shift, projection")
    vsub = p.add_subparsers(dest="check", metavar="CHECK")
    vsub.required = True

    def vcommon(q):
        q.add_argument("--constants", help="constants added to the checked universe")
        q.add_argument("--extra-constants", type=int, default=0,
                       help="also check universes widened by 1..N fresh constants")
        q.add_argument("--as-module", action="store_true")
        q.add_argument("--json", action="store_true")
        bounds(q, VERIFY_MAX_ATOMS)

    q = vsub.add_parser("ce", help="is BIG a conservative extension of SMALL?")
    q.add_argument("small")
    q.add_argument("big")
    q.add_argument("--context", help="modular program both modules are placed into")
    vcommon(q)
    q = vsub.add_parser("split", help="splitting: modular models vs iota-stable models")
    q.add_argument("file")
    vcommon(q)
    q = vsub.add_parser("shift", help="shift leaves the p-stable models unchanged")
    q.add_argument("file")
    q.add_argument("--intensional")
    vcommon(q)
    q = vsub.add_parser("projection", help="projection yields a conservative extension")
    q.add_argument("file")
    q.add_argument("--rule", type=int)
    q.add_argument("--vars")
    q.add_argument("--pred")
    q.add_argument("--auto", action="store_true")
    vcommon(q)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command in (None, "help"):
        parser.print_help(out)
        return EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"modsm: error: {exc}\n")
        return EXIT_USAGE
    except BoundExceeded as exc:
        err.write(f"modsm: error: {exc}\n")
        return EXIT_BOUND
    except ModsmSyntaxError as exc:
        err.write(f"modsm: syntax error: {exc}\n")
        return EXIT_USAGE
    except ModsmError as exc:
        err.write(f"modsm: error: {exc}\n")
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())
