# Copyright (c) 2026, QCS
# License: see license.txt

"""Exceptions raised by qvortex. The CLI maps them to exit codes."""


class QvortexError(Exception):
    exit_code = 1


class ConfigError(QvortexError):
    """Invalid run configuration; ``field`` is the dotted key path when known."""

    exit_code = 1

    def __init__(self, message, field=None, line=None, column=None):
        self.field = field
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if field:
            where.append(f"field '{field}'")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)


class OutputError(QvortexError):
    exit_code = 2


class PreconditionError(QvortexError, ValueError):
    exit_code = 1


class NonConvergence(QvortexError):
    """An iteration stopped without meeting its tolerance.

    ``last`` holds the last iterate and ``error`` the achieved error estimate.
    """

    exit_code = 3

    def __init__(self, message, last=None, error=None):
        self.last = last
        self.error = error
        super().__init__(message)


class QuadratureNonConvergence(NonConvergence):
    pass


class TrackLost(NonConvergence):
    pass


class SingularNode(QvortexError, ArithmeticError):
    """Velocity requested where the density is at or below the floor."""

    exit_code = 3

    def __init__(self, point, density):
        self.point = point
        self.density = density
        super().__init__(f"density {density:.3e} at {point} is below the floor; vortex core")


class DegenerateZeroSet(QvortexError):
    """The zero set is a line, not isolated vortices (F0 = 0)."""

    exit_code = 3
