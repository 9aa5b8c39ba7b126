"""Exception hierarchy.

Every error is a ``ValueError`` so callers that do not care about the
distinction can catch a single builtin.
"""


class ChiralOscError(ValueError):
    """Base class for all library errors."""


class ModelError(ChiralOscError):
    """The problem description violates one of its invariants."""


class NonHermitianInput(ModelError):
    pass


class NonFiniteValue(ModelError):
    pass


class DegenerateLevelWithoutBroadening(ChiralOscError):
    """A level sits on the doublet energy but no density of states was given."""


class InvarianceError(ChiralOscError):
    """The mass matrix does not satisfy the requested symmetry."""


class NotCPTSymmetric(InvarianceError):
    pass


class NotTSymmetric(InvarianceError):
    pass


class ZeroSplitting(InvarianceError):
    """The doublet has no energy splitting, so there is no oscillation."""


class ConfigError(ChiralOscError):
    pass


class ParseError(ConfigError):
    pass


class SchemaError(ConfigError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class BadSweepPath(ConfigError):
    pass
