"""Exception hierarchy.

Three families, mirroring the CLI exit codes: malformed or invalid input
(:class:`InvalidInput`, exit 2), a checked property that turned out false
(:class:`PropertyViolation`, exit 1) and budget exhaustion
(:class:`BudgetExhausted`, exit 3).
"""


class CatcovError(Exception):
    exit_code = 2


class InvalidInput(CatcovError):
    exit_code = 2


class PropertyViolation(CatcovError):
    exit_code = 1


class BudgetExhausted(CatcovError):
    exit_code = 3


# -- input / precondition errors ---------------------------------------------

class DuplicateName(InvalidInput):
    pass


class EndpointMismatch(InvalidInput):
    pass


class MissingComposite(InvalidInput):
    pass


class NotAssociative(InvalidInput):
    pass


class PairEndpointMismatch(InvalidInput):
    pass


class NotFunctorial(InvalidInput):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class NoSuchObject(InvalidInput):
    pass


class NotConnected(InvalidInput):
    pass


class ActionNotFree(InvalidInput):
    pass


class FibreMismatch(InvalidInput):
    pass


class ObjectSetMismatch(InvalidInput):
    pass


class NotInjectiveOnObjects(InvalidInput):
    pass


class NotBijectiveOnObjects(InvalidInput):
    pass


class TargetNotConnected(InvalidInput):
    pass


class SectionNotEquivariant(InvalidInput):
    pass


class NotAGroupoid(InvalidInput):
    pass


class EmptyE(InvalidInput):
    pass


# -- checked properties that failed ------------------------------------------

class NotACovering(PropertyViolation):
    pass


class NotSurjectiveOnObjects(NotACovering):
    pass


class StarNotInjective(NotACovering):
    def __init__(self, msg, obj=None, pair=None):
        super().__init__(msg)
        self.obj = obj
        self.pair = pair


class StarNotSurjective(NotACovering):
    def __init__(self, msg, obj=None, missing=None):
        super().__init__(msg)
        self.obj = obj
        self.missing = missing


class NotEquivariant(PropertyViolation):
    pass


# -- budgets -----------------------------------------------------------------

class BudgetOrNonFree(BudgetExhausted):
    """The simplified fundamental group still carries relators."""
