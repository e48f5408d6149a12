"""Exception hierarchy shared by the solver modules."""


class XWellError(Exception):
    """Base class for every numerical or domain failure raised by xwell."""


class DomainError(XWellError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class PoleAtNonPositiveInteger(DomainError):
    pass


class ArgumentTooLargeForSeries(DomainError):
    pass


class ArgumentOutOfSpecfunDomain(DomainError):
    pass


class EnergyBelowWellBottom(DomainError):
    pass


class NoClassicalTurningPoints(DomainError):
    pass


class NegativeEnergyForWellAction(DomainError):
    pass


class EnergyNotBelowBarrierTop(DomainError):
    pass


class NonConvergence(XWellError):
    pass


class QuadratureNonConvergence(NonConvergence):
    pass


class NearIntegerOrderLimitFailed(NonConvergence):
    pass


class BracketingFailed(XWellError):
    """A sign change could not be isolated; ``interval`` holds the offending range."""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class TooFewStatesInRange(BracketingFailed):
    pass


class NoSignChange(BracketingFailed):
    pass


class PoleEncountered(XWellError):
    pass


class SingularSystem(PoleEncountered):
    pass


class StepTooLarge(DomainError):
    pass


class OverflowBeforeXmax(NonConvergence):
    pass
