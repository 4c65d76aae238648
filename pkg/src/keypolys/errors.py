"""Exception hierarchy."""


class KeyPolyError(Exception):
    """Base class for every error raised by keypolys."""


class DomainMismatch(KeyPolyError, TypeError):
    """Operands live in different rings or at the wrong tower level."""


class NotMonic(KeyPolyError, ValueError):
    pass


class ConstantPivot(KeyPolyError, ValueError):
    """Division or expansion by a polynomial of degree 0."""


class ParseError(KeyPolyError, ValueError):
    pass


class ConfigError(KeyPolyError, ValueError):
    pass


class GammaNotGreater(KeyPolyError, ValueError):
    """Augmentation value not strictly above the inner value of the pivot."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class LambdaNotAboveFamily(KeyPolyError, ValueError):
    pass


class GeneratorExhausted(KeyPolyError, LookupError):
    """A limit family cannot produce the index needed for an evaluation."""


class InvalidChain(KeyPolyError, ValueError):
    pass
