"""Exception and warning types shared across the package."""


class MinmaxHyperError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MinmaxHyperError, ValueError):
    """Input in the distribution or word mini-language could not be parsed."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DomainError(MinmaxHyperError, ValueError):
    """Parameter outside the documented domain of an operation."""


class InfiniteMoment(MinmaxHyperError, ArithmeticError):
    """The requested moment is declared infinite for this distribution."""


class NonConvergent(MinmaxHyperError, RuntimeError):
    """Quadrature could not certify the requested tolerance within budget."""


class NotSubregular(MinmaxHyperError, RuntimeError):
    """A clip-constant search requires both subregularity checks to pass first."""


class HypothesisFailed(MinmaxHyperError, RuntimeError):
    """A comparison theorem was invoked on inputs that fail its hypotheses."""


class NoFiniteD(MinmaxHyperError, RuntimeError):
    """No scale factor up to the search cap certifies the two-sided comparison."""


class RescaleFailed(MinmaxHyperError, RuntimeError):
    """Auto-rescaling a set to the requested mass level did not converge."""


class GridTooCoarse(MinmaxHyperError, ValueError):
    """Sampled derivative data is inconsistent with the supplied values."""


class UsageError(MinmaxHyperError, ValueError):
    """Malformed command line or request payload."""


class QuantileAtAtom(UserWarning):
    """The defining inequalities of a quantile hold without strict slack."""
