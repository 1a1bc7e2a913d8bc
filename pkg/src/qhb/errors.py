class InvalidPair(ValueError):
    """Input pair violates p > q >= 1, gcd(p, q) = 1 (or the analogous
    precondition for a continued fraction)."""


class ModulusTooLarge(ValueError):
    """An exhaustive scan was requested beyond its guard."""


class NoUnimodularCompletion(ArithmeticError):
    """No integer corner entry makes the extended Gram matrix unimodular."""


class ConsistencyFailure(RuntimeError):
    """An identity that must hold by construction failed. Always a bug."""
