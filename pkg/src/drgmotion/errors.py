"""Exception hierarchy shared by all modules.

Every library error derives from :class:`DrgError`; the CLI maps any of them
to exit code 1 and prints the class name.
"""


class DrgError(Exception):
    """Base class for library errors."""


# -- arrays -----------------------------------------------------------------

class InvalidArray(DrgError):
    """An intersection array violates a structural constraint.

    ``violations`` lists every problem found, not just the first one.
    """

    def __init__(self, message, index=None, violations=None):
        super().__init__(message)
        self.index = index
        self.violations = list(violations) if violations else [self]


class MonotonicityViolation(InvalidArray):
    pass


class NonIntegralSphereSize(InvalidArray):
    pass


class NegativeA(InvalidArray):
    pass


class ParityViolation(InvalidArray):
    pass


class LambdaMuViolation(InvalidArray):
    pass


class ValencyTwo(DrgError):
    pass


class ParameterOutOfRange(DrgError):
    pass


# -- spectrum ---------------------------------------------------------------

class DegenerateSpectrum(DrgError):
    pass


class GapViolation(DrgError):
    pass


# -- graphs -----------------------------------------------------------------

class TooLarge(DrgError):
    pass


class NotConnected(DrgError):
    pass


class NotDistanceRegular(DrgError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class IndexOutOfRange(DrgError):
    pass


class NoGeometry(DrgError):
    pass


class CliqueSearchExhausted(DrgError):
    pass


class HypothesisFails(DrgError):
    pass


class NotBipartite(DrgError):
    pass


class NotAntipodal(DrgError):
    pass


class GraphFormatError(DrgError):
    pass


# -- config -----------------------------------------------------------------

class CoherenceViolation(DrgError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvarianceViolation(DrgError):
    pass


class BoundViolation(DrgError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotPrimitive(DrgError):
    pass


# -- groups -----------------------------------------------------------------

class CapExceeded(DrgError):
    pass


class TrivialGroup(DrgError):
    pass


class NotEdgeTransitive(DrgError):
    pass


class ZeroFraction(DrgError):
    pass


class HypothesisNotMet(DrgError):
    def __init__(self, message, unsplit=None):
        super().__init__(message)
        self.unsplit = unsplit or []


# -- certifier --------------------------------------------------------------

class HypothesisChainBroken(DrgError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class DiameterTooSmall(DrgError):
    pass


class UnverifiableHypothesis(DrgError):
    pass


class NotImprimitive(DrgError):
    pass


class RecursionBottom(DrgError):
    pass
