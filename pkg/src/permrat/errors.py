"""Exception hierarchy shared across the package.

Each class carries the CLI exit code used when it escapes to the top level.
"""


class PermratError(Exception):
    exit_code = 1


class InputError(PermratError):
    """Malformed or inconsistent user input (bad generators, bad JSON, ...)."""

    exit_code = 2


class UnsupportedRangeError(PermratError):
    """The request is well-formed but outside the supported desk-scale range."""

    exit_code = 3


class InternalConsistencyError(PermratError):
    """A dual-route check or verification failed.  Never silently wrong."""

    exit_code = 4
