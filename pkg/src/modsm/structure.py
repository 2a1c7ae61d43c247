"""Simplicity, dependency graphs, strongly connected components and coherence."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .errors import ModsmError
from .modular import ModularProgram, iota
from .syntax import Predicate


@dataclass(frozen=True)
class DepGraph:
    vertices: frozenset
    edges: frozenset

    def successors(self, v: str) -> list:
        return sorted(w for u, w in self.edges if u == v)

    def to_dot(self, name: str = "dependencies") -> str:
        lines = [f"digraph {name} {{"]
        for v in sorted(self.vertices):
            lines.append(f'  "{v}";')
        for u, w in sorted(self.edges):
            lines.append(f'  "{u}" -> "{w}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass
class Verdict:
    """Boolean answer plus human-readable diagnostics."""

    ok: bool
    diagnostics: list = field(default_factory=list)
    sccs: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def head_violations(mp: ModularProgram) -> list:
    """``(module, rule index, predicate)`` for every head predicate missing from its tuple."""
    out = []
    for m in mp.modules:
        tuple_ = set(m.intensional)
        for index, rule in enumerate(m.program.rules):
            for a in rule.head:
                if isinstance(a, Predicate) and a.name not in tuple_:
                    out.append((m.name, index, a.name))
    return out


def is_simple(mp: ModularProgram) -> Verdict:
    bad = head_violations(mp)
    return Verdict(not bad, [
        f"module {m}: rule {i} has head predicate {p} outside its intensional tuple"
        for m, i, p in bad
    ])


def dependency_graph(mp: ModularProgram) -> DepGraph:
    simple = is_simple(mp)
    if not simple:
        raise ModsmError("dependency graph needs a simple modular program: "
                         + "; ".join(simple.diagnostics))
    vertices = frozenset(iota(mp))
    edges = set()
    for m in mp.modules:
        for rule in m.program.rules:
            for h in rule.head:
                for b in rule.pos:
                    if isinstance(b, Predicate) and b.name in vertices:
                        edges.add((h.name, b.name))
    return DepGraph(vertices, frozenset(e for e in edges if e[0] in vertices))


def sccs(g: DepGraph) -> list:
    """Strongly connected components, ordered by their smallest vertex name."""
    graph = nx.DiGraph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from(g.edges)
    comps = [frozenset(c) for c in nx.strongly_connected_components(graph)]
    return sorted(comps, key=min)


def is_coherent(mp: ModularProgram) -> Verdict:
    simple = is_simple(mp)
    if not simple:
        return Verdict(False, ["not simple"] + simple.diagnostics)
    diagnostics = []
    modules = list(mp.modules)
    for a in range(len(modules)):
        for b in range(a + 1, len(modules)):
            shared = set(modules[a].intensional) & set(modules[b].intensional)
            if shared:
                diagnostics.append(
                    f"overlap: modules {modules[a].name} and {modules[b].name} "
                    f"share intensional predicate(s) {', '.join(sorted(shared))}"
                )
    components = sccs(dependency_graph(mp))
    for comp in components:
        if not any(comp <= set(m.intensional) for m in modules):
            diagnostics.append(
                "split component: {" + ", ".join(sorted(comp))
                + "} is not contained in any single module's intensional tuple"
            )
    return Verdict(not diagnostics, diagnostics, components)
