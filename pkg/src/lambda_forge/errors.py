"""Typed errors shared across the package.

The CLI maps these to exit codes: InputError -> 1, the mathematical
refusals -> 2.  Anything else escaping is a bug.
"""


class InputError(ValueError):
    """Malformed input: bad syntax, wrong field, violated precondition."""


class DensityRequiredError(RuntimeError):
    """Operation needs a Chebotarev-dense prime support but got an
    explicit finite one without an override."""


class BoundExceededError(RuntimeError):
    """A configured norm/size bound was exceeded."""


class ModelRefusedError(RuntimeError):
    """An action was requested over a monoid it does not factor through."""
