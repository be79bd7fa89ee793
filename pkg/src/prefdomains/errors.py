"""Exception types shared across the package."""


class FormatError(ValueError):
    """A profile, graph, or clause file does not conform to its text format."""


class GuardExceededError(RuntimeError):
    """A brute-force oracle or enumerator was asked to exceed its resource guard.

    Raised instead of silently falling back to an approximation; callers that
    hit this must shrink the instance or choose another method.
    """
