"""Exception taxonomy for the qresum package.

Evaluation routines raise these instead of returning NaN/inf so that a
caller (and the CLI, which maps them to exit code 2) can always tell a
domain violation apart from a numerical result.  Plain built-in
exceptions are reused where they already say the right thing:
``ZeroDivisionError`` for a vanishing reciprocal factor and
``OverflowError`` when a log-scale prefactor leaves float range.
"""

from __future__ import annotations

__all__ = [
    "QResumError",
    "MaxTermsExceeded",
    "ZeroArgumentError",
    "PoleError",
    "ParameterPoleError",
    "DivergenceDomainError",
    "DomainOverlapEmptyError",
    "SpiralProximityError",
    "TailNotConvergedError",
    "BranchCutError",
    "ExpressionError",
    "ExprSyntaxError",
    "UnknownFunctionError",
    "UnknownParameterError",
    "ArityError",
]


class QResumError(Exception):
    """Base class for all library-specific errors."""


class MaxTermsExceeded(QResumError):
    """A truncated sum or product hit the term cap before its tail was
    certified small."""


class ZeroArgumentError(QResumError, ValueError):
    """An argument that must be nonzero (e.g. the theta argument) was zero."""


class PoleError(QResumError, ValueError):
    """Evaluation requested exactly at (or within guard distance of) a pole."""


class ParameterPoleError(PoleError):
    """A series parameter sits on a forbidden q-spiral, so a denominator
    factor vanishes for some index."""


class DivergenceDomainError(QResumError, ValueError):
    """The point lies outside the series' convergence domain, or the series
    converges nowhere and only a formal-coefficient view makes sense."""


class DomainOverlapEmptyError(QResumError, ValueError):
    """A connection-formula check needs both sides to converge and the two
    domains do not overlap at the requested point."""


class SpiralProximityError(QResumError, ValueError):
    """The evaluation point is within guard distance of an excluded q-spiral
    (a line of poles/zeros accumulating at the origin)."""


class TailNotConvergedError(QResumError):
    """A bilateral tail failed its geometric certification inside the
    allowed index window."""


class BranchCutError(QResumError, ValueError):
    """A principal-branch power was requested on the cut (negative real
    axis) where the limit statement does not apply."""


# --- expression language ---------------------------------------------------

class ExpressionError(QResumError):
    """Base class for errors raised while parsing or validating the CLI
    expression language."""


class ExprSyntaxError(ExpressionError):
    """Tokenizer/parser failure; carries the 1-based position and what was
    expected there."""

    def __init__(self, message: str, line: int, col: int,
                 expected: tuple[str, ...] = (), found: str = ""):
        super().__init__(message)
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found

    def __str__(self) -> str:  # pragma: no cover - formatting only
        base = super().__str__()
        loc = f" at line {self.line}, column {self.col}"
        if self.expected:
            exp = " or ".join(self.expected)
            return f"{base}{loc}: expected {exp}, found {self.found!r}"
        return base + loc


class UnknownFunctionError(ExpressionError):
    """The expression calls a function name that is not registered."""


class UnknownParameterError(ExpressionError):
    """A keyword argument name is not accepted by the called function."""


class ArityError(ExpressionError):
    """A required keyword argument is missing, duplicated, or the given
    combination does not select a supported series."""
