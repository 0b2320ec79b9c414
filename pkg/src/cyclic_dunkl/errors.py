"""Exception hierarchy shared by every module."""


class DunklError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(DunklError, ValueError):
    """An argument lies outside its admissible range."""


class SeriesDomainError(DunklError, ValueError):
    """A series has mass where an operator is undefined.

    Raised when a diagonal operator defined on one residue class receives
    coefficients in another class, or when a first-order factor
    ``d/dx + c/x`` would produce a negative power of ``x``.
    """


class GammaPoleError(DunklError, ArithmeticError):
    """A gamma function argument hit a nonpositive integer."""


class VanishingDenominatorError(DunklError, ArithmeticError):
    """The eigen-series recursion divides by ``n + k_(n mod m) = 0``."""

    def __init__(self, n, weight):
        self.n = n
        self.weight = weight
        super().__init__(
            f"recursion denominator n + k_(n mod m) vanishes at n={n} "
            f"(weight {weight!r})"
        )


class ConvergenceError(DunklError, RuntimeError):
    """A series or quadrature failed to reach its tolerance."""


class EvaluationError(DunklError, ArithmeticError):
    """A sampled function returned a non-finite value."""
