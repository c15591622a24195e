"""Exception hierarchy.  The CLI maps these to exit codes."""


class OrbikitError(Exception):
    pass


class PreconditionError(OrbikitError, ValueError):
    """Input rejected because an operation's precondition fails."""


class InfiniteGroupError(PreconditionError):
    pass


class NotHomomorphismError(PreconditionError):
    pass


class NotSurjectiveError(PreconditionError):
    pass


class TrivialCharacterError(PreconditionError):
    pass


class MixedLevelError(PreconditionError):
    pass


class ArityError(PreconditionError):
    pass


class NotTransitiveError(PreconditionError):
    pass


class CosetLimitError(PreconditionError):
    pass


class NambaCriterionError(PreconditionError):
    pass


class GeneratorMatchError(PreconditionError):
    pass


class UnknownFixtureError(PreconditionError, KeyError):
    def __str__(self):
        # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class ConsistencyError(OrbikitError):
    """An internal double-entry check failed (e.g. oracle disagreement)."""
