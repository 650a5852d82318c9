"""Exception hierarchy.

Every error raised by the package derives from :class:`GradeforgeError`.
The three families map onto CLI exit codes: malformed input (2), violated
mathematical preconditions (3), and exhausted work budgets (4).
"""

from __future__ import annotations


class GradeforgeError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class SchemaError(GradeforgeError):
    """Malformed descriptor, config, or wire payload."""

    exit_code = 2


class MathPreconditionError(GradeforgeError):
    """Input is well-formed but violates a mathematical precondition."""

    exit_code = 3


class BudgetError(GradeforgeError):
    """A work budget (depth, state count, term count) is too small."""

    exit_code = 4


# -- exact algebra ----------------------------------------------------------

class InexactDivision(MathPreconditionError):
    """Polynomial division left a nonzero remainder."""


class VariableMismatch(MathPreconditionError):
    """Operands live in polynomial rings with different variable counts."""


class NoKernel(MathPreconditionError):
    """The matrix has full column rank; no left kernel vector exists."""


class PoleAtPoint(MathPreconditionError):
    """Rational-function evaluation hit a zero of the denominator."""


# -- series -----------------------------------------------------------------

class ZeroConstantTerm(MathPreconditionError):
    """Reciprocal of a series whose constant term is zero."""


# -- algebraic series -------------------------------------------------------

class NotARoot(MathPreconditionError):
    """y0 is not a root of P(0, y)."""


class RamifiedBranch(MathPreconditionError):
    """P_y(0, y0) = 0: the branch is ramified (or y0 is a multiple root)."""


# -- holonomic --------------------------------------------------------------

class DegenerateInput(MathPreconditionError):
    """Recurrence input whose leading coefficient window is identically zero."""


class UnderdeterminedRecurrence(MathPreconditionError):
    """Supplied initial terms do not cover every index the recurrence skips."""


class NoFit(MathPreconditionError):
    """Recurrence guessing found only the zero solution."""


# -- obstruction ------------------------------------------------------------

class TooSparse(MathPreconditionError):
    """Too few nonzero coefficients for a meaningful growth fit."""


class NotSignSequence(MathPreconditionError):
    """Periodicity scan applied to entries outside {+1, -1}."""


# -- mod-p automata ---------------------------------------------------------

class PrimeDividesDenominator(MathPreconditionError):
    """Reduction mod p^r hit a coefficient denominator divisible by p."""

    def __init__(self, p: int, index: int):
        super().__init__(
            f"prime {p} divides the denominator of coefficient {index}"
        )
        self.p = p
        self.index = index


class BudgetTooSmall(BudgetError):
    """Source truncation cannot support the requested fingerprint/depth."""


# -- diagonal lifts ---------------------------------------------------------

class BranchNotAtZero(MathPreconditionError):
    """Bivariate lift requires a branch with constant term zero."""


class RamifiedAtOrigin(MathPreconditionError):
    """Lift denominator degenerates at the origin (P_y(0,0) = 0)."""


class VariableCollision(MathPreconditionError):
    """Product lift factors do not use pairwise disjoint variable blocks."""


class DenominatorVanishesAtOrigin(MathPreconditionError):
    """Diagonal extraction needs den(0, ..., 0) != 0."""


class BudgetExceeded(BudgetError):
    """Requested expansion exceeds the configured desk-scale limits."""


# -- descriptors --------------------------------------------------------------

class TruncationExceeded(MathPreconditionError):
    """A fixed-coefficient descriptor was asked for more terms than it holds."""


# -- analytic bench ---------------------------------------------------------

class NonPositiveArgument(MathPreconditionError):
    """Integral representation only converges for z > 0."""


class InsufficientTerms(BudgetError):
    """Series tail bound still exceeds tolerance at the term cap."""


class NotOdd(MathPreconditionError):
    """Plate identity requires an odd series (even coefficients zero)."""
