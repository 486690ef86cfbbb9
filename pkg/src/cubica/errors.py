"""Exception types raised across the package."""


class CubicaError(Exception):
    pass


class ZeroInput(CubicaError, ValueError):
    pass


class RamifiedInput(CubicaError, ValueError):
    """The input is divisible by the ramified prime 1 - omega."""


class BothZero(CubicaError, ValueError):
    pass


class BadModulus(CubicaError, ValueError):
    """The modulus is not primary (not congruent to 1 mod 3)."""


class NotPrime(CubicaError, ValueError):
    pass


class NotPrimitive(CubicaError, ValueError):
    pass


class PoleAtOne(CubicaError, ValueError):
    pass


class TooLarge(CubicaError, ValueError):
    pass


class ConsistencyFailure(CubicaError, RuntimeError):
    """Two independent evaluation routes disagree beyond tolerance."""


class CorruptCache(CubicaError, RuntimeError):
    pass
