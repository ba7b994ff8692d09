"""Exception hierarchy.

Every domain failure derives from :class:`NeutroStatError`, which the CLI maps
to exit code 2.  The class name doubles as the error code in reports.
"""


class NeutroStatError(ValueError):
    """Base class for all domain errors."""

    @property
    def code(self):
        return type(self).__name__


# set values
class DivisorContainsZero(NeutroStatError):
    pass


class NegativeUnderEvenRoot(NeutroStatError):
    pass


class ParseError(NeutroStatError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


# neutrosophic numbers
class UndefinedDivision(NeutroStatError):
    def __init__(self, message, reason=""):
        super().__init__(message)
        self.reason = reason


class NoRealRoot(NeutroStatError):
    pass


class NoRealSolution(NeutroStatError):
    pass


# descriptive
class TooFewObservations(NeutroStatError):
    pass


class EmptyTable(NeutroStatError):
    pass


class NegativeFrequency(NeutroStatError):
    pass


class BadK(NeutroStatError):
    pass


class BadWeights(NeutroStatError):
    pass


# distributions
class XOutOfRange(NeutroStatError):
    pass


class ZeroTotal(NeutroStatError):
    pass


class OutOfRange(NeutroStatError):
    pass


class BadComposition(NeutroStatError):
    pass


class BadCounts(NeutroStatError):
    pass


# regression
class DegenerateX(NeutroStatError):
    pass


class TooFewPoints(NeutroStatError):
    pass


class DegenerateVariance(NeutroStatError):
    pass


class PointOutsideSet(NeutroStatError):
    pass


# inference
class UnknownLevel(NeutroStatError):
    pass


class DfOutOfTable(NeutroStatError):
    pass


class SmallSample(NeutroStatError):
    pass


class BadSpread(NeutroStatError):
    pass


class BadN(NeutroStatError):
    pass


class PreconditionFailed(NeutroStatError):
    def __init__(self, message, bound=""):
        super().__init__(message)
        self.bound = bound


class BadBound(NeutroStatError):
    pass


# random generation
class EmptyAlphabet(NeutroStatError):
    pass


class BadRange(NeutroStatError):
    pass
