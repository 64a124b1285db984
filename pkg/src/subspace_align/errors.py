"""Exception types raised across the package."""


class SubspaceAlignError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(SubspaceAlignError, ValueError):
    """An argument violates a documented precondition."""


class DimensionMismatch(InvalidInput):
    """Operands have incompatible shapes."""


class ShapeError(InvalidInput):
    """A matrix has the wrong orientation for the requested operation."""


class InvalidBasis(InvalidInput):
    """A matrix expected to have orthonormal columns does not."""


class EmptyComplement(InvalidInput):
    """A square orthonormal basis has no orthogonal complement."""


class UnsupportedOrder(InvalidInput):
    """No Hadamard matrix of the requested order can be constructed."""


class RankMismatch(InvalidInput):
    """Two matrices that must share a numerical rank do not."""


class NotAligned(InvalidInput):
    """A basis whose product with the pinning matrix must be PSD fails the check."""


class NotApplicable(InvalidInput):
    """The requested quantity is undefined for these inputs."""


class NumericalFailure(SubspaceAlignError, RuntimeError):
    """An underlying numerical routine failed to converge."""


class VerificationFailure(SubspaceAlignError, RuntimeError):
    """A computed value disagrees with its closed form beyond tolerance."""
