"""Exact scalars a + b*sqrt(5) over the rationals.

Equality, ordering and sign are decided exactly through rational
comparisons and one squaring; no floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

_RATIONAL = (int, Fraction)


@total_ordering
class QuadExt:
    """Immutable element of Q(sqrt 5), stored as reduced fractions a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0) -> None:
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)

    def __repr__(self) -> str:
        return f"QuadExt({self.a}, {self.b})"

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt5"
        return f"{self.a} {'+' if self.b > 0 else '-'} {abs(self.b)}*sqrt5"

    # -- equality and ordering ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, _RATIONAL):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def sign(self) -> int:
        """-1, 0 or +1; exact (a^2 compared against 5 b^2 when signs mix)."""
        a, b = self.a, self.b
        if not b:
            return (a > 0) - (a < 0)
        if not a:
            return 1 if b > 0 else -1
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        d = a * a - 5 * b * b
        if a > 0:
            return 1 if d > 0 else -1
        return -1 if d > 0 else 1

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "QuadExt":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QuadExt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> "QuadExt":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QuadExt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> "QuadExt":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QuadExt(other.a - self.a, other.b - self.b)

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.a, -self.b)

    def __mul__(self, other) -> "QuadExt":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QuadExt(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b)

    def inverse(self) -> "QuadExt":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 5)")
        d = self.a * self.a - 5 * self.b * self.b
        return QuadExt(self.a / d, -self.b / d)

    def __truediv__(self, other) -> "QuadExt":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QuadExt":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "QuadExt":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def _coerce(x) -> QuadExt | None:
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, _RATIONAL):
        return QuadExt(x)
    return None


ZERO = QuadExt(0)
ONE = QuadExt(1)
SQRT5 = QuadExt(0, 1)
