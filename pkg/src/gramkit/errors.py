"""Exception types shared across the package."""


class NonHurwitzError(ValueError):
    """Raised when an operation requires a strictly stable dynamics matrix.

    The infinite-horizon Gramian exists only when every eigenvalue of the
    dynamics matrix has real part below the stability threshold; marginally
    stable systems (e.g. an undamped oscillator) are rejected rather than
    producing a meaningless solve.
    """


class SingularGramianError(ValueError):
    """Raised when a Gramian is not numerically positive definite.

    Signals an uncontrollable or near-uncontrollable direction: the
    minimum-energy quadratic form has no meaningful value there, and silently
    regularizing would corrupt the energy semantics.
    """


class QuadratureConvergenceError(RuntimeError):
    """Raised when adaptive quadrature fails to converge within the panel cap."""
