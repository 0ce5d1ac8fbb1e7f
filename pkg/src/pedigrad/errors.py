"""Exception hierarchy.

Two error families matter to callers (and to the CLI exit-code contract):

* :class:`ParseError` — malformed textual input (segment literals, chromology
  files, sum literals, ...).  Carries a location when one is known.
* :class:`ValidationError` — structurally well-formed input that violates a
  model invariant (color increase, broken commuting square, non-Cartesian
  cone, ...).  The message always names the violated invariant.
"""
from __future__ import annotations


class PedigradError(Exception):
    """Base class for all library errors."""


class ParseError(PedigradError):
    """Malformed textual input.

    ``offset`` is a 0-based byte offset into the parsed string, ``line`` a
    1-based line number for line-oriented files.  Either may be None.
    """

    def __init__(self, message: str, *, offset: int | None = None,
                 line: int | None = None):
        self.message = message
        self.offset = offset
        self.line = line
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif offset is not None:
            where = f" (offset {offset})"
        super().__init__(message + where)


class ValidationError(PedigradError):
    """Input violates a declared invariant; the message names it."""


class CapExceeded(ValidationError):
    """An enumeration exceeded its configured cap (never silently truncated)."""


class UniverseTooLarge(ValidationError):
    """A brute-force enumeration was requested over too large a universe."""
