"""Exception types shared across the package.

The CLI maps these onto exit codes: usage errors exit 2 (argparse), resource
guards exit 3, internal-consistency failures exit 4.
"""

__all__ = ["ResourceGuardError", "InternalConsistencyError"]


class ResourceGuardError(RuntimeError):
    """A combinatorial or cost guard refused the requested computation."""


class InternalConsistencyError(AssertionError):
    """A mathematical identity the implementation relies on failed to hold.

    This signals a bug or a convention mismatch, never bad user input; the
    message names the identity that broke.
    """
