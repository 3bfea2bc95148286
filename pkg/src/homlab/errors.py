"""Exception hierarchy.

The CLI maps these onto exit codes: ``InputError`` subclasses to 2,
``BudgetExceeded`` to 3 and ``TheoremGuardError`` subclasses to 4.
"""


class HomlabError(Exception):
    pass


class InputError(HomlabError, ValueError):
    """Bad input: malformed structure, violated precondition, bad argument."""


class StructureError(InputError):
    pass


class EmptySubset(InputError):
    pass


class UnknownElement(InputError):
    pass


class SignatureMismatch(InputError):
    pass


class NotBinary(InputError):
    pass


class ImproperFilter(InputError):
    pass


class NotUltrafilter(InputError):
    pass


class NotContaining(InputError):
    pass


class NotAClique(InputError):
    pass


class InvalidHomomorphism(InputError):
    pass


class NotCoprime(InputError):
    pass


class BadN(InputError):
    pass


class BudgetExceeded(HomlabError):
    def __init__(self, what, size, budget):
        super().__init__(f"{what}: size {size} exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget


class TheoremGuardError(HomlabError, AssertionError):
    """A construction that is a theorem at finite scale failed its check."""


class ExtractionFailure(TheoremGuardError):
    pass


class CensusFailure(TheoremGuardError):
    pass


class NotAPartialOrder(TheoremGuardError):
    pass


class ValidationFailure(TheoremGuardError):
    pass
