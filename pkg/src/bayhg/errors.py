"""Exception types raised by the library.

Parse errors carry a source location; everything else is a semantic
validation failure on otherwise well-formed input.
"""

from __future__ import annotations


class BayhgError(Exception):
    """Base class for all library errors."""


class DuplicateVertex(BayhgError):
    pass


class DuplicateEdge(BayhgError):
    pass


class EmptyHyperedge(BayhgError):
    pass


class TailHeadOverlap(BayhgError):
    pass


class UnknownVertex(BayhgError):
    pass


class UnknownVertexInEdge(UnknownVertex):
    pass


class CycleDetected(BayhgError):
    """A partially directed cycle was found.

    ``cycle`` lists the witnessing vertices in order; the sequence closes
    back onto its first element.
    """

    def __init__(self, cycle, rendered=None):
        self.cycle = list(cycle)
        msg = rendered or ("partially directed cycle: " + " ".join(self.cycle))
        super().__init__(msg)


class SelfLoop(BayhgError):
    pass


class ConflictingEdge(BayhgError):
    pass


class OverlappingSets(BayhgError):
    pass


class VertexSetMismatch(BayhgError):
    pass


class ComplexSearchTooLarge(BayhgError):
    pass


class NotAComponent(BayhgError):
    pass


class ScopeMismatch(BayhgError):
    pass


class InvalidFactor(BayhgError):
    pass


class ZeroNormalizer(BayhgError):
    """A per-component normalizer vanished for some parent configuration."""

    def __init__(self, component, configuration):
        self.component = tuple(component)
        self.configuration = dict(configuration)
        cfg = ", ".join(f"{k}={v}" for k, v in sorted(self.configuration.items()))
        super().__init__(
            "zero normalizer for component {%s} at {%s}"
            % (" ".join(self.component), cfg)
        )


class InvalidProbability(BayhgError):
    pass


class InvalidState(BayhgError):
    pass


class TooManyVariables(BayhgError):
    pass


class ParseError(BayhgError):
    """Syntax error in a structure file, with 1-based line/column."""

    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
