"""
Exception hierarchy shared by the algebra package and the CLI.
"""

from typing import Optional, Sequence


class AlgebraError(Exception):
    """Base class for every error the toolkit raises on purpose."""


class ParseError(AlgebraError):
    """Polynomial or presentation text could not be parsed."""

    def __init__(self, message: str, position: Optional[int] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.position = position
        self.line = line
        self.column = column
        super().__init__(self._render())

    def _render(self) -> str:
        if self.line is not None:
            return f"line {self.line}, column {self.column}: {self.message}"
        if self.position is not None:
            return f"position {self.position}: {self.message}"
        return self.message

    def at_line(self, line: int, column_offset: int) -> "ParseError":
        """Re-anchor a position-only error inside a file line."""
        column = column_offset + (self.position or 0) + 1
        return type(self)(self.message, self.position, line, column)


class UnknownVariableError(ParseError):
    pass


class AmbientMismatchError(AlgebraError):
    """Operands live in different variable tables or coefficient fields."""


class UnassignedVariableError(AlgebraError):
    pass


class NotHomogeneousError(AlgebraError):
    """A relation or generator mixes several weighted degrees."""

    def __init__(self, text: str, degrees: Sequence[int], line: Optional[int] = None, kind: str = "relation"):
        self.text = text
        self.degrees = sorted(set(degrees), reverse=True)
        self.line = line
        shown = ", ".join(str(d) for d in self.degrees)
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{kind} '{text}' is not homogeneous: mixed degrees {shown}")


class PreconditionError(AlgebraError, ValueError):
    """An operation was called outside its documented domain."""


class BudgetExceededError(AlgebraError):
    """A Groebner computation hit a configured resource cap."""

    def __init__(self, limit: str, value: int):
        self.limit = limit
        self.value = value
        super().__init__(f"budget exceeded: {limit} > {value}")


class BoundExceededError(AlgebraError):
    pass


class PresentationError(AlgebraError):
    """Malformed presentation file: unknown key, bad UTF-8 or a broken line."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
