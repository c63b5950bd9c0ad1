"""Overflow-safe complex scalars on a log-linear scale.

A :class:`ScaledComplex` stores a value as ``m * exp(e)`` with a complex
mantissa ``m`` and a real exponent ``e`` (natural log units).  Products of
q-series factors routinely pass through magnitudes like ``q**(-n*(n-1)/2)``
with ``|n|`` around 60, far outside float64 range, even when every final
ratio of interest is representable.  All internal theta/product plumbing
therefore multiplies and divides in this form and converts to a plain
``complex`` only at the public surface, where a genuine overflow is
reported as ``OverflowError`` rather than silently becoming ``inf``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = ["ScaledComplex"]

_LN_MAX = 709.0          # just under log(max float64)
_LN_TINY = -745.0        # below this the value underflows to exact zero
_FOLD_HI = 1e150         # mantissa renormalization thresholds
_FOLD_LO = 1e-150


def _make(m: complex, e: float) -> "ScaledComplex":
    if m == 0:
        return ScaledComplex(0j, 0.0)
    a = abs(m)
    if a > _FOLD_HI or a < _FOLD_LO:
        return ScaledComplex(m / a, e + math.log(a))
    return ScaledComplex(m, e)


@dataclass(frozen=True)
class ScaledComplex:
    m: complex
    e: float = 0.0

    @staticmethod
    def of(v) -> "ScaledComplex":
        if isinstance(v, ScaledComplex):
            return v
        return _make(complex(v), 0.0)

    @staticmethod
    def from_log(w: complex) -> "ScaledComplex":
        """exp(w) for a complex w whose real part may be far out of range."""
        return _make(cmath.exp(1j * w.imag), w.real)

    def is_zero(self) -> bool:
        return self.m == 0

    def log_abs(self) -> float:
        if self.m == 0:
            return -math.inf
        return self.e + math.log(abs(self.m))

    def phase(self) -> float:
        # atan2 instead of cmath.phase: some libm builds set ERANGE on
        # denormal components and cmath converts that to OverflowError
        return math.atan2(self.m.imag, self.m.real)

    def __mul__(self, other) -> "ScaledComplex":
        o = ScaledComplex.of(other)
        return _make(self.m * o.m, self.e + o.e)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledComplex":
        o = ScaledComplex.of(other)
        if o.m == 0:
            raise ZeroDivisionError("division by a zero scaled value")
        return _make(self.m / o.m, self.e - o.e)

    def __rtruediv__(self, other) -> "ScaledComplex":
        return ScaledComplex.of(other) / self

    def __neg__(self) -> "ScaledComplex":
        return ScaledComplex(-self.m, self.e)

    def __add__(self, other) -> "ScaledComplex":
        o = ScaledComplex.of(other)
        if self.m == 0:
            return o
        if o.m == 0:
            return self
        hi, lo = (self, o) if self.e >= o.e else (o, self)
        d = lo.e - hi.e
        if d < -760.0:
            return hi
        return _make(hi.m + lo.m * math.exp(d), hi.e)

    __radd__ = __add__

    def __sub__(self, other) -> "ScaledComplex":
        return self + (-ScaledComplex.of(other))

    def __rsub__(self, other) -> "ScaledComplex":
        return ScaledComplex.of(other) + (-self)

    def to_complex(self) -> complex:
        """Collapse to a plain complex.

        Raises OverflowError when the true magnitude exceeds float range;
        underflows far below the subnormal floor return exact 0.
        """
        if self.m == 0:
            return 0j
        la = self.log_abs()
        if la > _LN_MAX:
            raise OverflowError(
                f"scaled value with log-magnitude {la:.6g} exceeds float64 range")
        if la < _LN_TINY:
            return 0j
        if -700.0 < self.e < 700.0:
            return self.m * math.exp(self.e)
        return cmath.exp(complex(la, math.atan2(self.m.imag, self.m.real)))
