"""Exception types shared across the toolkit."""


class FreespecError(Exception):
    """Base class for all toolkit errors."""


class InvalidTuple(FreespecError):
    """Input matrices are not square, not hermitian, or inconsistently sized."""


class DimensionMismatch(FreespecError):
    """Operands disagree in the number of variables or in matrix size."""


class FieldUnsupported(FreespecError):
    """Operation restricted to the real field was called on complex data."""


class IllFormedCombination(FreespecError):
    """The scaling matrices of a combination do not sum to the identity."""


class BadNormalization(FreespecError):
    """gamma* gamma does not have unit trace."""


class NotPSD(FreespecError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue."""


class OutsideDomain(FreespecError):
    """The point lies outside the spectrahedron."""


class OutsideCube(FreespecError):
    """An entry of the tuple has norm exceeding one."""


class UnboundedDomain(FreespecError):
    """The spectrahedron has a nontrivial recession cone."""


class HierarchyViolation(FreespecError):
    """free/matrix/classical verdicts are mutually inconsistent.

    Signals tolerance misconfiguration rather than a property of the input.
    """


class IterationCapExceeded(FreespecError):
    """An iterative routine hit its cap without meeting its stopping rule."""


class UnboundedDirection(FreespecError):
    """The feasible segment along the requested direction is unbounded."""


class Infeasible(FreespecError):
    """A starting point violates feasibility beyond tolerance."""


class InfeasibleBeta(FreespecError):
    """beta is zero or not in the dilation subspace of the base point."""


class UnboundedAlpha(FreespecError):
    """No finite maximal dilation scale exists (unbounded spectrahedron)."""


class AlreadyMaximal(FreespecError):
    """The point is already a direct sum of free extreme points."""


class DescentFailure(FreespecError):
    """A dilation step failed to shrink the dilation subspace."""


class BlockingFailure(FreespecError):
    """Simultaneous block diagonalization could not separate eigenvalue clusters."""


class NotStrictContraction(FreespecError):
    """The row tuple is not a strict contraction."""


class SingularT(FreespecError):
    """The construction requires an invertible T."""


class LevelTooLarge(FreespecError):
    """The requested matrix level exceeds what the routine supports."""


class SchemaError(FreespecError):
    """A JSON payload does not match the documented schema."""
