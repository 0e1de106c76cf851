"""Exception types shared across the package.

Validation problems subclass ValueError so callers (and the CLI) can treat
"bad input" uniformly; runtime failures of the numerics are RuntimeErrors.
"""


class DimensionError(ValueError):
    """Matrix shapes are inconsistent with the declared dimensions."""


class NotHermitian(ValueError):
    """Entrywise asymmetry exceeds the hermiticity tolerance."""


class InvalidDensity(ValueError):
    """Matrix is not positive semidefinite with unit trace (within tolerance)."""


class InvalidMeasurement(ValueError):
    """Measurement operators are not PSD or do not sum to the identity."""


class DegenerateGame(Exception):
    """Payoff observable is a scalar multiple of the identity.

    Not a failure: every state pair is an exact equilibrium. The solver
    catches this and returns the maximally mixed pair with zero gap.
    """


class NotStrictlyPositive(ValueError):
    """An SDP instance fails the strict positivity requirements."""


class ValueTooSmall(RuntimeError):
    """Certified game value is not positive, so 1/value cannot bound the optimum.

    Retrying with a smaller epsilon usually resolves this.
    """


class NumericalError(RuntimeError):
    """An underlying numerical routine failed (e.g. eigensolver non-convergence)."""


class SchemaError(ValueError):
    """An instance or result file does not conform to the file format."""
