"""Exception hierarchy for the package.

Computation failures (no provable bound, violated side condition, failed
precondition) are distinct from usage errors (bad parameters) so that the CLI
can map them to exit codes.
"""


class HeckeZerosError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(HeckeZerosError):
    """A constructor or solver parameter is outside its allowed range."""


class InvalidGeneratorError(InvalidParameterError):
    """An autocorrelation generator takes negative values on its support."""


class DomainError(HeckeZerosError):
    """A function argument lies outside its mathematical domain."""


class NoBoundError(HeckeZerosError):
    """The solver's bracketing function has no sign change.

    ``sign`` records whether the function stays positive on the bracket
    (no repulsion provable) or stays negative (degenerate / unbounded,
    flagged for review).
    """

    def __init__(self, message, sign=None):
        super().__init__(message)
        self.sign = sign


class SideConditionError(HeckeZerosError):
    """The side condition fails at the computed root.

    ``salvage`` carries the weaker bound at the largest point of the bracket
    where the side condition still holds, when one exists.
    """

    def __init__(self, message, salvage=None):
        super().__init__(message)
        self.salvage = salvage


class BoundUnavailableError(HeckeZerosError):
    """Zero-density preconditions fail, so the bound formula does not apply."""


class NoRootError(HeckeZerosError):
    """A scan oracle found no sign change in the requested bracket."""


class OracleFailureError(HeckeZerosError):
    """A verification oracle did not converge within its budget."""


class InfeasibleSearchError(HeckeZerosError):
    """A parameter search found no point satisfying the hard constraints."""
