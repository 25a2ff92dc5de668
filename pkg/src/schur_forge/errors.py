"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`SchurForgeError`; the CLI reports ``type(err).__name__`` verbatim.
"""


class SchurForgeError(Exception):
    """Base class for all library errors."""


class InvalidInput(SchurForgeError, ValueError):
    pass


# exact fields
class InvalidField(InvalidInput):
    pass


class InvalidPrime(InvalidInput):
    pass


class FactorizationTooLarge(SchurForgeError):
    pass


class SingularMatrix(SchurForgeError, ZeroDivisionError):
    pass


# presentations and representations
class UnboundGenerator(SchurForgeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DimensionMismatch(SchurForgeError, ValueError):
    pass


class EmptyQuiver(InvalidInput):
    pass


class RelationViolated(SchurForgeError, ValueError):
    pass


class ZeroTotalDimension(InvalidInput):
    pass


class NotPathAlgebraRep(SchurForgeError, ValueError):
    pass


# algebras
class ZeroParameter(InvalidInput):
    pass


class SquareParameter(SchurForgeError, ValueError):
    pass


class NotOrthogonalIdempotents(SchurForgeError, ValueError):
    pass


class NotAssociative(SchurForgeError, ValueError):
    pass


# descent and Brauer classes
class NotACocycle(SchurForgeError, ValueError):
    pass


class NotFixed(SchurForgeError, ValueError):
    pass


class NotGaloisStable(SchurForgeError, ValueError):
    pass


class NotSchur(SchurForgeError, ValueError):
    pass


class NormMismatch(SchurForgeError, ValueError):
    pass


class BudgetExhausted(SchurForgeError, RuntimeError):
    pass


class ZeroInput(InvalidInput):
    pass


class DegenerateDiscriminant(SchurForgeError, ValueError):
    pass


class InvalidDocument(InvalidInput):
    """A JSON document that fails validation; ``path`` is a JSON pointer."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(message)
        self.path = path
