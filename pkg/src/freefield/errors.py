"""Exception types raised by the library."""


class FreeFieldError(Exception):
    """Base class for library errors."""


class AlphabetMismatch(FreeFieldError, ValueError):
    pass


class InverseOfZero(FreeFieldError, ZeroDivisionError):
    """Raised when an inverse is requested for an element known to be zero."""


class NotRegular(FreeFieldError, ValueError):
    """The constant coefficient matrix of the pencil is singular."""


class NotAdmissible(FreeFieldError, ValueError):
    """A transformation would change the first component of the solution."""


class CertificationRequired(FreeFieldError, ValueError):
    """The operation is only valid on systems certified minimal."""


class FormMismatch(FreeFieldError, ValueError):
    """A system is not in the block form an inverse construction expects."""


class SchemaError(FreeFieldError, ValueError):
    """Malformed serialized data."""


class ParseError(FreeFieldError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
