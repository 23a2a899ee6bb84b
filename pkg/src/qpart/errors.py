"""Exception hierarchy shared by all qpart modules.

DomainError maps to CLI exit code 3 (bad inputs for the requested
operation), InvariantViolation to exit code 4 (an internal exactness or
consistency check failed, i.e. a bug, never a rounding fallback).
"""


class QpartError(Exception):
    pass


class DomainError(QpartError):
    """The arguments are outside the operation's domain."""


class BelowBoundaryError(DomainError):
    """Evaluation of a quasi-polynomial at n <= its lower boundary."""


class NotCoprimeError(DomainError):
    """A modular inverse was requested for non-coprime arguments."""


class DegenerateModulusError(DomainError):
    """A reciprocity/lemma step with r4 divisible by r5 (g1 = 0)."""


class InvariantViolation(QpartError):
    """An exactness assertion failed; indicates a defect, not bad input."""


class PeriodCapError(InvariantViolation):
    """Quasi-polynomial period grew beyond the configured cap."""
