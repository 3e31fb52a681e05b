"""Exception types shared across the package."""


class FieldInvError(Exception):
    """Base class for every error raised by fieldinv."""


class BadInput(FieldInvError, ValueError):
    """Malformed or out-of-domain user input."""


class BadRange(BadInput):
    pass


class EmptySupport(BadInput):
    """No nontrivial character is left after normalization."""


class NonCyclicGroup(BadInput):
    pass


class DimensionMismatch(BadInput):
    pass


class NotFullRank(FieldInvError, ValueError):
    pass


class Diverged(FieldInvError, RuntimeError):
    """The degree loop passed the Noether cap without generating the lattice.

    This can only happen through a bug; valid input always terminates.
    """
