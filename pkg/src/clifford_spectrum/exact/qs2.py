"""Exact elements of the real quadratic field Q(sqrt 2).

An element is stored as ``(p + q*sqrt2) / d`` with integers ``p, q`` and a
positive integer ``d`` such that ``gcd(p, q, d) == 1``.  The public view is the
pair of rationals ``a = p/d`` and ``b = q/d``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union["QS2", int, Fraction]

_SQRT2 = math.sqrt(2.0)


def _sign_int(x: int) -> int:
    return (x > 0) - (x < 0)


class QS2:
    """Number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("_p", "_q", "_d", "_hash")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0) -> None:
        a = Fraction(a)
        b = Fraction(b)
        d = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    def _set(self, p: int, q: int, d: int) -> None:
        g = math.gcd(math.gcd(p, q), d)
        if g != 1:
            p //= g
            q //= g
            d //= g
        self._p = p
        self._q = q
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, p: int, q: int, d: int) -> QS2:
        obj = cls.__new__(cls)
        if d < 0:
            p, q, d = -p, -q, -d
        obj._set(p, q, d)
        return obj

    @classmethod
    def coerce(cls, x: Scalar) -> QS2:
        if isinstance(x, QS2):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 1)
        if isinstance(x, Rational):
            return cls._raw(int(x.numerator), 0, int(x.denominator))
        raise TypeError(f"cannot convert {type(x).__name__} to QS2")

    @classmethod
    def sqrt2(cls) -> QS2:
        return cls._raw(0, 1, 1)

    # -- views -------------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._d)

    @property
    def is_rational(self) -> bool:
        return self._q == 0

    def conjugate(self) -> QS2:
        """Image under the field automorphism sqrt2 -> -sqrt2."""
        return QS2._raw(self._p, -self._q, self._d)

    def norm(self) -> Fraction:
        """Field norm ``a**2 - 2 b**2``."""
        return Fraction(self._p * self._p - 2 * self._q * self._q, self._d * self._d)

    def sign(self) -> int:
        p, q = self._p, self._q
        sp, sq = _sign_int(p), _sign_int(q)
        if sp >= 0 and sq >= 0:
            return 1 if (sp or sq) else 0
        if sp <= 0 and sq <= 0:
            return -1
        # mixed signs: compare p**2 with 2 q**2
        return sp * _sign_int(p * p - 2 * q * q)

    def __abs__(self) -> QS2:
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        p, q, d = self._p, self._q, self._d
        if p == 0 or q == 0 or (p > 0) == (q > 0):
            return float(Fraction(p, d)) + float(Fraction(q, d)) * _SQRT2
        # p + q sqrt2 = (p^2 - 2 q^2) / (p - q sqrt2); avoids cancellation
        den = float(Fraction(p, d)) - float(Fraction(q, d)) * _SQRT2
        return float(Fraction(p * p - 2 * q * q, d * d)) / den

    def __bool__(self) -> bool:
        return self._p != 0 or self._q != 0

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: Scalar) -> QS2:
        if not isinstance(other, QS2):
            if isinstance(other, int):
                return QS2._raw(self._p + other * self._d, self._q, self._d)
            try:
                other = QS2.coerce(other)
            except TypeError:
                return NotImplemented
        d1, d2 = self._d, other._d
        if d1 == d2:
            return QS2._raw(self._p + other._p, self._q + other._q, d1)
        return QS2._raw(self._p * d2 + other._p * d1, self._q * d2 + other._q * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> QS2:
        obj = QS2.__new__(QS2)
        obj._p, obj._q, obj._d, obj._hash = -self._p, -self._q, self._d, None
        return obj

    def __pos__(self) -> QS2:
        return self

    def __sub__(self, other: Scalar) -> QS2:
        try:
            return self + (-QS2.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other: Scalar) -> QS2:
        try:
            return QS2.coerce(other) + (-self)
        except TypeError:
            return NotImplemented

    def __mul__(self, other: Scalar) -> QS2:
        if not isinstance(other, QS2):
            if isinstance(other, int):
                return QS2._raw(self._p * other, self._q * other, self._d)
            try:
                other = QS2.coerce(other)
            except TypeError:
                return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, other._p, other._q
        return QS2._raw(p1 * p2 + 2 * q1 * q2, p1 * q2 + q1 * p2, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> QS2:
        n = self._p * self._p - 2 * self._q * self._q
        if n == 0:
            raise ZeroDivisionError("QS2 division by zero")
        return QS2._raw(self._d * self._p, -self._d * self._q, n)

    def __truediv__(self, other: Scalar) -> QS2:
        try:
            other = QS2.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> QS2:
        try:
            return QS2.coerce(other) * self.inverse()
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int) -> QS2:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QS2._raw(1, 0, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, QS2):
            return self._p == other._p and self._q == other._q and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._q == 0 and Fraction(self._p, self._d) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._p, self._q, self._d)) if self._q else hash(Fraction(self._p, self._d))
        return self._hash

    def _cmp(self, other: Scalar) -> int:
        return (self - QS2.coerce(other)).sign()

    def __lt__(self, other: Scalar) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Scalar) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Scalar) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Scalar) -> bool:
        return self._cmp(other) >= 0

    # -- display ---------------------------------------------------------------
    def __repr__(self) -> str:
        return f"QS2({self.a!s}, {self.b!s})"

    def __str__(self) -> str:
        if self._q == 0:
            return str(self.a)
        if self._p == 0:
            return f"{self.b}*sqrt2"
        b = self.b
        return f"{self.a} {'-' if b < 0 else '+'} {abs(b)}*sqrt2"

    def to_json(self) -> dict[str, str]:
        return {"a": _frac_str(self.a), "b": _frac_str(self.b)}

    @classmethod
    def from_json(cls, data: dict[str, str]) -> QS2:
        return cls(Fraction(data["a"]), Fraction(data["b"]))


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


ZERO = QS2(0)
ONE = QS2(1)
SQRT2 = QS2.sqrt2()


def pow2_half(k: int) -> QS2:
    """Exact ``2**(k/2)`` for an integer ``k``."""
    half, odd = divmod(k, 2)
    base = QS2(Fraction(2) ** half)
    return base * SQRT2 if odd else base
