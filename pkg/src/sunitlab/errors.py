"""Exception hierarchy shared by every module."""


class SunitLabError(Exception):
    pass


class DivisionByZero(SunitLabError, ZeroDivisionError):
    pass


class FieldMismatch(SunitLabError):
    pass


class GaloisDataMissing(SunitLabError):
    pass


class InvalidGaloisData(SunitLabError):
    pass


class ReducibleDefiningPolynomial(SunitLabError):
    pass


class UndecidableDivision(SunitLabError):
    """The divisor enclosure meets zero; refine and retry."""


class BadEmbedding(SunitLabError, IndexError):
    pass


class ZeroInput(SunitLabError, ValueError):
    pass


class NeedsRefinement(SunitLabError):
    pass


class ConjugatesOutsideField(SunitLabError):
    pass


class PartitionRefused(SunitLabError):
    pass


class PrecisionExhausted(SunitLabError):
    pass


class BadInput(SunitLabError, ValueError):
    pass


class ConfigError(SunitLabError):
    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key
