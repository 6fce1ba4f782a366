"""Shared exception types.

Input errors (malformed files, precondition violations, bad parameters) are
distinct from domain verdicts: a failed validation or a refuted claim is a
report, not an exception. The CLI maps InputError to exit code 2.
"""


class InputError(ValueError):
    """Malformed input or violated precondition."""


class UndefinedRelativeElementError(InputError):
    """An operation was asked relative to the zero element O."""
