"""Text syntax for traditional (``.lp``) and modular (``.mlp``) programs.

Grammar (``%`` starts a line comment)::

    program   := statement*
    statement := head '.' | head ':-' body '.' | ':-' body '.'
    head      := atom (';' atom)* | '{' atom '}'
    body      := literal (',' literal)*          (may be empty after ':-')
    literal   := atom | 'not' atom | 'not' 'not' atom
               | term '=' term | term '!=' term
    atom      := ident | ident '(' term (',' term)* ')'
    term      := Variable | ident | integer | "string" | ident '(' term, ... ')'

    modular   := ('#module' ident '{' [ident (',' ident)*] '}' '.' program '#end' '.')*

Identifiers start with a lowercase letter, variables with an uppercase
letter; both may end in primes (``a'``, ``Z'``).  ``X != Y`` is read as
``not X = Y``; a choice rule ``{a} :- B.`` is read as ``a :- B, not not a.``
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import ModsmSyntaxError, ModuleError, RuleRestrictionError, SourceSpan
from .syntax import (
    Constant,
    Equality,
    Function,
    Predicate,
    Program,
    Rule,
    Variable,
    signature_of,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<directive>\#[A-Za-z_]+)
  | (?P<ident>[a-z][A-Za-z0-9_]*'*)
  | (?P<var>[A-Z_][A-Za-z0-9_]*'*)
  | (?P<int>-?[0-9]+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<op>:-|!=|[.,;(){}=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    span: SourceSpan


def tokenize(text: str, file: str = "<string>") -> list:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            span = SourceSpan(file, line, pos - line_start + 1, 1)
            raise ModsmSyntaxError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        value = m.group()
        span = SourceSpan(file, line, pos - line_start + 1, len(value))
        if kind not in ("ws", "comment"):
            if kind == "var" and value == "_":
                raise ModsmSyntaxError("anonymous variables are not supported", span)
            tokens.append(Token(kind, value, span))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", SourceSpan(file, line, pos - line_start + 1, 0)))
    return tokens


class _Parser:
    def __init__(self, text: str, file: str):
        self.tokens = tokenize(text, file)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, value: str) -> bool:
        return self.tok.kind == "op" and self.tok.value == value

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.fail(f"expected {value!r}")
        return self.advance()

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        found = tok.value or "end of input"
        raise ModsmSyntaxError(f"{message}, found {found!r}", tok.span)

    # terms and atoms

    def term(self):
        tok = self.tok
        if tok.kind == "var":
            self.advance()
            return Variable(tok.value)
        if tok.kind in ("int", "string"):
            self.advance()
            return Constant(tok.value)
        if tok.kind == "ident" and tok.value != "not":
            self.advance()
            if self.at("("):
                return Function(tok.value, self.arguments())
            return Constant(tok.value)
        self.fail("expected a term")

    def arguments(self) -> tuple:
        self.expect("(")
        args = [self.term()]
        while self.at(","):
            self.advance()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def atom(self):
        """A predicate atom or an (in)equality; returns (atom, negated_by_!=)."""
        tok = self.tok
        if tok.kind == "ident" and tok.value != "not" and not self._is_equality_ahead():
            self.advance()
            args = self.arguments() if self.at("(") else ()
            return Predicate(tok.value, args, span=tok.span), False
        left = self.term()
        if self.at("="):
            self.advance()
            return Equality(left, self.term(), span=tok.span), False
        if self.at("!="):
            self.advance()
            return Equality(left, self.term(), span=tok.span), True
        self.fail("expected an atom")

    def _is_equality_ahead(self) -> bool:
        # ident followed by '=' / '!=' (possibly after an argument list) is a term
        j = self.i + 1
        if self.tokens[j].kind == "op" and self.tokens[j].value == "(":
            depth = 0
            while j < len(self.tokens) - 1:
                t = self.tokens[j]
                if t.kind == "op" and t.value == "(":
                    depth += 1
                elif t.kind == "op" and t.value == ")":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            j += 1
        t = self.tokens[min(j, len(self.tokens) - 1)]
        return t.kind == "op" and t.value in ("=", "!=")

    def literal(self) -> tuple:
        nots = 0
        start = self.tok
        while self.tok.kind == "ident" and self.tok.value == "not" and nots < 2:
            self.advance()
            nots += 1
        if self.tok.kind == "ident" and self.tok.value == "not":
            self.fail("at most two nested 'not' are allowed")
        atom, inequality = self.atom()
        if inequality:
            nots += 1
        if nots > 2:
            raise ModsmSyntaxError("too many negations in literal", start.span)
        return nots, atom

    # rules

    def rule(self) -> Rule:
        start = self.tok
        head: list = []
        choice = False
        if self.at("{"):
            self.advance()
            atom, inequality = self.atom()
            if inequality or isinstance(atom, Equality):
                raise RuleRestrictionError("equality may not occur in the head of a rule", start.span)
            head.append(atom)
            if not self.at("}"):
                self.fail("a choice head contains exactly one atom")
            self.advance()
            choice = True
            if self.at(";"):
                self.fail("choice heads cannot be combined with disjunction")
        elif not self.at(":-"):
            while True:
                atom, inequality = self.atom()
                if inequality or isinstance(atom, Equality):
                    raise RuleRestrictionError(
                        "equality may not occur in the head of a rule", atom.span or start.span
                    )
                head.append(atom)
                if not self.at(";"):
                    break
                self.advance()
                if self.at("{"):
                    self.fail("choice heads cannot be combined with disjunction")
        body: list = []
        if self.at(":-"):
            self.advance()
            if not self.at("."):
                body.append(self.literal())
                while self.at(","):
                    self.advance()
                    body.append(self.literal())
        elif not head:
            self.fail("expected a rule")
        self.expect(".")
        pos = [a for n, a in body if n == 0]
        neg = [a for n, a in body if n == 1]
        negneg = [a for n, a in body if n == 2]
        if choice:
            negneg.append(head[0])
        return Rule(tuple(head), tuple(pos), tuple(neg), tuple(negneg), span=start.span)

    def rules_until(self, stop) -> list:
        rules = []
        while not stop():
            if self.tok.kind == "eof":
                break
            if self.tok.kind == "directive":
                return rules
            rules.append(self.rule())
        return rules

    def program(self) -> Program:
        rules = self.rules_until(lambda: self.tok.kind == "eof")
        if self.tok.kind == "directive":
            tok = self.tok
            raise ModsmSyntaxError(f"directive {tok.value} is only allowed in modular programs", tok.span)
        prog = Program(tuple(rules))
        signature_of(prog)  # arity conflicts
        return prog

    def modular(self):
        from .modular import DefModule, ModularProgram

        modules = []
        names = set()
        while self.tok.kind != "eof":
            tok = self.tok
            if tok.kind != "directive":
                raise ModuleError(f"{tok.span}: rule outside of a #module block")
            if tok.value != "#module":
                raise ModuleError(f"{tok.span}: unknown or misplaced directive {tok.value}")
            self.advance()
            name_tok = self.advance()
            if name_tok.kind != "ident":
                self.fail("expected a module name", name_tok)
            if name_tok.value in names:
                raise ModuleError(f"{name_tok.span}: duplicate module name {name_tok.value!r}")
            names.add(name_tok.value)
            self.expect("{")
            intensional: list = []
            if not self.at("}"):
                while True:
                    p = self.advance()
                    if p.kind != "ident" or p.value == "not":
                        self.fail("expected a predicate name", p)
                    if p.value in intensional:
                        raise ModuleError(f"{p.span}: predicate {p.value!r} listed twice")
                    intensional.append(p.value)
                    if not self.at(","):
                        break
                    self.advance()
            self.expect("}")
            self.expect(".")
            rules = self.rules_until(lambda: self.tok.kind == "eof")
            end = self.tok
            if end.kind != "directive" or end.value != "#end":
                if end.kind == "eof":
                    raise ModuleError(f"{end.span}: module {name_tok.value!r} is missing #end")
                raise ModuleError(f"{end.span}: unknown or misplaced directive {end.value}")
            self.advance()
            self.expect(".")
            program = Program(tuple(rules))
            signature_of(program)
            module = DefModule(name_tok.value, tuple(intensional), program)
            module.validate()
            modules.append(module)
        mp = ModularProgram(tuple(modules))
        mp.signature()  # arity conflicts across modules
        return mp


def parse_program(text: str, file: str = "<string>") -> Program:
    return _Parser(text, file).program()


def parse_modular(text: str, file: str = "<string>"):
    return _Parser(text, file).modular()


def parse_atom(text: str):
    """Parse a single atom such as ``q(1,2)``; handy for tests and the CLI."""
    parser = _Parser(text, "<atom>")
    atom, inequality = parser.atom()
    if inequality or parser.tok.kind != "eof":
        parser.fail("expected a single atom")
    return atom


# rendering


def render_literal(polarity: int, atom) -> str:
    if polarity == 1 and isinstance(atom, Equality):
        return f"{atom.left.text()} != {atom.right.text()}"
    return "not " * polarity + atom.text()


def render_rule(r: Rule) -> str:
    head = " ; ".join(a.text() for a in r.head)
    body = ", ".join(render_literal(n, a) for n, a in r.body)
    if not body:
        return f"{head}." if head else ":- ."
    if not head:
        return f":- {body}."
    return f"{head} :- {body}."


def render_rules(rules: Iterable[Rule]) -> str:
    return "".join(render_rule(r) + "\n" for r in rules)


def render(obj) -> str:
    """Canonical text for a Program, ModularProgram, DefModule or Rule."""
    from .modular import DefModule, ModularProgram

    if isinstance(obj, Rule):
        return render_rule(obj)
    if isinstance(obj, Program):
        return render_rules(obj.rules)
    if isinstance(obj, DefModule):
        return (
            f"#module {obj.name} {{{', '.join(obj.intensional)}}}.\n"
            + render_rules(obj.program.rules)
            + "#end.\n"
        )
    if isinstance(obj, ModularProgram):
        return "\n".join(render(m) for m in obj.modules)
    raise TypeError(f"cannot render {type(obj).__name__}")
