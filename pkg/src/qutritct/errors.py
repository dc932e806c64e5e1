"""Exception hierarchy shared by the arithmetic, synthesis and CLI layers."""


class QutritError(Exception):
    """Base class for every error raised by this package."""


class NotADenominatorExponent(QutritError, ValueError):
    """A residue was requested at an exponent below the least denominator exponent."""


class NotRealError(QutritError, ValueError):
    pass


class NotRepresentableError(QutritError, ValueError):
    """The value has a denominator outside of powers of 2 and alpha."""


class DomainError(QutritError, ValueError):
    """Input matrix is outside the operator domain (e.g. not exactly unitary)."""


class NotCliffordTError(QutritError, ValueError):
    """The operator is not a single-qutrit Clifford+T operator.

    ``stage`` names the synthesis stage that rejected the input: one of
    ``"ring"``, ``"unitarity"``, ``"lde"``, ``"discriminator"``, ``"final"``
    or ``"phase"``.
    """

    def __init__(self, message, stage):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


class CircuitSyntaxError(QutritError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ConversionError(QutritError):
    """Canonical/channel conversion hit a table miss."""


class InternalConsistencyError(QutritError, AssertionError):
    """A generated table failed one of its self-checks."""
