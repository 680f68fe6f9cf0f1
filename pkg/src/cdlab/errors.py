"""Exception hierarchy for cdlab."""


class CDLabError(Exception):
    pass


class CapExceeded(CDLabError):
    pass


class ElementCapExceeded(CapExceeded):
    pass


class FamilyCapExceeded(CapExceeded):
    pass


class OracleCapExceeded(CapExceeded):
    pass


class TooLarge(CapExceeded):
    pass


class InvalidPermutation(CDLabError, ValueError):
    pass


class SingularGenerator(CDLabError, ValueError):
    pass


class InconsistentData(CDLabError, ValueError):
    pass


class InvalidPrime(CDLabError, ValueError):
    pass


class NotCentral(CDLabError, ValueError):
    pass


class NotIsomorphism(CDLabError, ValueError):
    pass


class RadicalNotTrivial(CDLabError):
    """Raised by the bilinear fast path when Z(G) is larger than the designated central subgroup."""


class NotAMember(CDLabError, KeyError):
    pass


class NotComparable(CDLabError, ValueError):
    pass


class NotQuasiAntichain(CDLabError, ValueError):
    pass


class WidthTooSmall(CDLabError, ValueError):
    pass


class HypothesisViolated(CDLabError):
    pass


class PrimeNotDividing(CDLabError, ValueError):
    pass


class InconsistentInput(CDLabError, ValueError):
    pass


class ParseError(CDLabError, ValueError):
    pass


class UnknownSuite(CDLabError, KeyError):
    pass


class IndexOutOfRange(CDLabError, IndexError):
    pass
