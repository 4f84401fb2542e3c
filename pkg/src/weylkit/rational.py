"""Exact complex-rational scalars.

Every identity in the symbolic layer of this package is an exact algebraic
statement, so its coefficients must never touch floating point.  The stdlib
gives us exact rationals (``fractions.Fraction``) but no complex form of
them; :class:`CRat` is that missing scalar: a complex number whose real and
imaginary parts are both ``Fraction``.

Floats are accepted as inputs and converted exactly (every float is a dyadic
rational), so e.g. ``CRat(0.5)`` is exactly one half.
"""

from fractions import Fraction

__all__ = ["CRat", "ZERO", "ONE", "I"]

_RAT_TYPES = (int, Fraction)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    raise TypeError(f"cannot build an exact rational from {type(value).__name__}")


class CRat:
    """A complex number with exact rational real and imaginary parts.

    Immutable and hashable; supports mixed arithmetic with int and Fraction.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    # ------------------------------------------------------------------
    # construction helpers
    # ------------------------------------------------------------------

    @classmethod
    def coerce(cls, value) -> "CRat":
        """Coerce int/float/Fraction/CRat/complex into a CRat, exactly."""
        if isinstance(value, CRat):
            return value
        if isinstance(value, complex):
            # complex floats are dyadic rationals; conversion is exact
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(_as_fraction(value))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("CRat is immutable")

    # ------------------------------------------------------------------
    # predicates
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_imaginary(self) -> bool:
        return self.re == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, _RAT_TYPES):
            other = CRat(other)
        if not isinstance(other, CRat):
            return NotImplemented
        return CRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _RAT_TYPES):
            other = CRat(other)
        if not isinstance(other, CRat):
            return NotImplemented
        return CRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        if isinstance(other, _RAT_TYPES):
            return CRat(other).__sub__(self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, _RAT_TYPES):
            other = CRat(other)
        if not isinstance(other, CRat):
            return NotImplemented
        return CRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _RAT_TYPES):
            other = CRat(other)
        if not isinstance(other, CRat):
            return NotImplemented
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("division by zero CRat")
        return CRat(
            (self.re * other.re + self.im * other.im) / den,
            (self.im * other.re - self.re * other.im) / den,
        )

    def __rtruediv__(self, other):
        if isinstance(other, _RAT_TYPES):
            return CRat(other).__truediv__(self)
        return NotImplemented

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return (ONE / self) ** (-exponent)
        result = ONE
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CRat":
        return CRat(self.re, -self.im)

    # ------------------------------------------------------------------
    # comparisons / hashing / conversion
    # ------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, _RAT_TYPES):
            other = CRat(other)
        if isinstance(other, complex):
            other = CRat.coerce(other)
        if not isinstance(other, CRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    # ------------------------------------------------------------------
    # printing
    # ------------------------------------------------------------------

    @staticmethod
    def _fmt_rational(r: Fraction) -> str:
        return str(r)  # "3", "-1/2", ...

    def __str__(self) -> str:
        if self.im == 0:
            return self._fmt_rational(self.re)
        if self.re == 0:
            return self._fmt_imag(self.im)
        return f"({self._fmt_rational(self.re)} {'+' if self.im > 0 else '-'} "\
               f"{self._fmt_imag(abs(self.im)).lstrip('+')})"

    @staticmethod
    def _fmt_imag(r: Fraction) -> str:
        if r == 1:
            return "i"
        if r == -1:
            return "-i"
        if r.denominator == 1:
            return f"{r.numerator}i"
        sign = "-" if r < 0 else ""
        return f"{sign}({abs(r)})i"

    def __repr__(self) -> str:
        return f"CRat({self.re!r}, {self.im!r})"


ZERO = CRat(0)
ONE = CRat(1)
I = CRat(0, 1)
