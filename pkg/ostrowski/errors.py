from __future__ import annotations


class OstrowskiError(ValueError):
    """Base class for every domain error raised by the library."""


class ModulusError(OstrowskiError):
    pass


class DomainError(OstrowskiError):
    pass


class NotInvertibleError(OstrowskiError):
    def __init__(self, a: int, d: int, g: int):
        super().__init__(f"{a} is not invertible modulo {d} (gcd={g})")
        self.a = a
        self.d = d
        self.g = g


class ContextMismatchError(OstrowskiError):
    def __init__(self, expected: tuple, actual: tuple):
        super().__init__(f"digit string bound to {actual[0]}/{actual[1]}, not {expected[0]}/{expected[1]}")
        self.expected = expected
        self.actual = actual


class DigitIndexError(OstrowskiError, IndexError):
    pass


class BoundViolation(OstrowskiError, ArithmeticError):
    """A range guaranteed by a proof did not hold."""
