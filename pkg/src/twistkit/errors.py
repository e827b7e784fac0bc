"""Exception hierarchy.

Two families matter to callers: ``UsageError`` (bad input, CLI exit 1)
and ``VerificationAnomaly`` (an invariant the math guarantees was observed
to fail, CLI exit 2).
"""


class TwistkitError(Exception):
    """Base class for all package errors."""


class UsageError(TwistkitError):
    """Invalid input or arguments."""


class RankMismatchError(UsageError):
    """Operands have different ranks (number of torus variables)."""


class SizeMismatchError(UsageError):
    """Weight multisets have different sizes."""


class NotInvertibleError(UsageError):
    """Matrix has zero determinant."""


class NotSemisimpleError(UsageError):
    """Matrix has a non-squarefree minimal polynomial."""


class NonIntegralLeadingWeightError(UsageError):
    """Lexicographic maximum of a claimed k-th symmetric power is not divisible by k."""


class VerificationFailedError(UsageError):
    """Input multiset is not a k-th symmetric power of any multiset of the requested size."""


class SingularCurveError(UsageError):
    """4a^3 + 27b^2 = 0."""


class EmptyIntersectionError(UsageError):
    """Two eigenvalue tables share no primes."""


class GroupTooLargeError(UsageError):
    """Generated group exceeds the supported size bound."""


class NotStableError(UsageError):
    """Element set is not closed under conjugation."""


class FormatError(UsageError):
    """Malformed input file."""


class VerificationAnomaly(TwistkitError):
    """A property that should hold unconditionally failed on concrete data."""


class HasseViolationError(VerificationAnomaly):
    """An eigenvalue violates a_p^2 <= 4p on weight-2 data."""


class TheoremViolationError(VerificationAnomaly):
    """Equal character powers but unequal weight multisets."""
