"""Exception types shared by the construction modules and the CLI."""


class InputError(ValueError):
    """Invalid caller input: bad positions, malformed files, bad parameters."""


class InvariantError(AssertionError):
    """An internal invariant failed (debug checks, verify mode, tree validation)."""
