"""Exception hierarchy shared by every famtop module."""

from __future__ import annotations


class FamtopError(Exception):
    """Base class; ``code`` is the stable name used in CLI reports."""

    @property
    def code(self) -> str:
        return type(self).__name__


class SizeGuardExceeded(FamtopError):
    def __init__(self, guard: str, value: int, bound: int) -> None:
        super().__init__(f"{guard}: {value} exceeds bound {bound}")
        self.guard = guard
        self.value = value
        self.bound = bound


class TopologyAxiomError(FamtopError, ValueError):
    """A candidate family of subsets is not a topology."""


class MissingEmptySet(TopologyAxiomError):
    def __init__(self) -> None:
        super().__init__("empty set is not open")


class MissingFullSet(TopologyAxiomError):
    def __init__(self) -> None:
        super().__init__("full point set is not open")


class NotClosedUnderIntersection(TopologyAxiomError):
    def __init__(self, a: int, b: int) -> None:
        super().__init__(f"intersection of opens {a:#b} and {b:#b} is not open")
        self.witness = (a, b)


class NotClosedUnderUnion(TopologyAxiomError):
    def __init__(self, a: int, b: int) -> None:
        super().__init__(f"union of opens {a:#b} and {b:#b} is not open")
        self.witness = (a, b)


class InternalAxiomFailure(FamtopError):
    """A construction that must yield a topology did not (implementation bug)."""


class NotAPartialOrder(FamtopError, ValueError):
    pass


class NotOpen(FamtopError, ValueError):
    pass


class NotContinuous(FamtopError, ValueError):
    pass


class WrongCodomain(FamtopError, ValueError):
    pass


class LevelNotBuilt(FamtopError, LookupError):
    pass


class TopologyNotSet(FamtopError, LookupError):
    pass


class NotT0(FamtopError, ValueError):
    def __init__(self, level: int) -> None:
        super().__init__(f"topology at level {level} is not T0")
        self.level = level


class ParseError(FamtopError):
    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateName(ParseError):
    pass


class DanglingReference(ParseError):
    pass


class UnknownName(FamtopError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown name"
