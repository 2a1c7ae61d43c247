"""Exception hierarchy shared by every modsm module."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class ModsmError(Exception):
    """Base class for all errors raised by the library."""


class ModsmSyntaxError(ModsmError):
    def __init__(self, message: str, span: SourceSpan | None = None):
        self.message = message
        self.span = span
        super().__init__(f"{span}: {message}" if span else message)


class RuleRestrictionError(ModsmSyntaxError):
    """Equality used in a rule head or under double negation."""


class ArityError(ModsmError):
    def __init__(self, kind: str, name: str, first: int, second: int):
        self.kind = kind
        self.name = name
        self.arities = (first, second)
        super().__init__(
            f"{kind} symbol {name!r} used with arity {first} and arity {second}"
        )


class ModuleError(ModsmError):
    """Malformed modular program (duplicate names, stray rules, ...)."""


class GroundingError(ModsmError):
    pass


class NoConstantError(GroundingError):
    def __init__(self, message: str = ""):
        super().__init__(
            message
            or "the signature contains no object constant; the Herbrand "
            "universe would be empty (at least one object constant is required)"
        )


class InfiniteUniverseError(GroundingError):
    def __init__(self, functions):
        names = ", ".join(f"{n}/{a}" for n, a in sorted(functions.items()))
        super().__init__(
            f"function symbols of positive arity ({names}) make the Herbrand "
            "universe infinite; pass max_depth / --max-depth to bound it"
        )


class BoundExceeded(ModsmError):
    def __init__(self, atoms: int, limit: int, what: str = "enumeration"):
        self.atoms = atoms
        self.limit = limit
        super().__init__(
            f"{what} needs {atoms} open ground atoms, above the limit of {limit} "
            "(raise it with max_atoms / --max-atoms)"
        )


class ProjectionError(ModsmError):
    pass
