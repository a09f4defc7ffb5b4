"""Exact arithmetic in the real quadratic-radical field Q(sqrt2, sqrt3).

Every numeric coefficient needed by the teleportation scenarios (1/2, 1/4,
1/sqrt2, 1/sqrt12, ...) lives in this field, so all state algebra stays
exact.  An element is stored as four arbitrary-precision rationals
(a, b, c, d) meaning a + b*sqrt2 + c*sqrt3 + d*sqrt6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def _frac(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_SQRT6 = math.sqrt(6.0)


@dataclass(frozen=True)
class QRoot:
    """a + b*sqrt2 + c*sqrt3 + d*sqrt6 with exact rational components."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    @staticmethod
    def of(a: Rational = 0, b: Rational = 0, c: Rational = 0, d: Rational = 0) -> "QRoot":
        return QRoot(_frac(a), _frac(b), _frac(c), _frac(d))

    @staticmethod
    def rational(x: Rational) -> "QRoot":
        return QRoot(_frac(x))

    # -- ring structure -------------------------------------------------

    def __add__(self, other: "QRoot") -> "QRoot":
        return QRoot(self.a + other.a, self.b + other.b,
                     self.c + other.c, self.d + other.d)

    def __sub__(self, other: "QRoot") -> "QRoot":
        return QRoot(self.a - other.a, self.b - other.b,
                     self.c - other.c, self.d - other.d)

    def __neg__(self) -> "QRoot":
        return QRoot(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: "QRoot") -> "QRoot":
        # sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3,
        # sqrt3*sqrt6 = 3*sqrt2, sqrt6*sqrt6 = 6.
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return QRoot(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    def inv(self) -> "QRoot":
        """Exact multiplicative inverse; rationalizes over both radicals."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        # Conjugating over sqrt2 kills the b,d components of the product;
        # conjugating the result over sqrt3 leaves a pure rational norm.
        conj2 = QRoot(self.a, -self.b, self.c, -self.d)
        y = self * conj2                        # lies in Q(sqrt3)
        conj3 = QRoot(y.a, y.b, -y.c, -y.d)     # negating sqrt3 also flips sqrt6
        n = y * conj3
        assert n.b == 0 and n.c == 0 and n.d == 0 and n.a != 0
        scale = 1 / n.a
        num = conj2 * conj3
        return QRoot(num.a * scale, num.b * scale, num.c * scale, num.d * scale)

    def __truediv__(self, other: "QRoot") -> "QRoot":
        return self * other.inv()

    # -- predicates and conversions -------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def eval(self) -> float:
        return (float(self.a) + float(self.b) * _SQRT2
                + float(self.c) * _SQRT3 + float(self.d) * _SQRT6)

    def sqrt(self) -> "QRoot":
        """Square root, when it exists in the field.

        Handles non-negative rationals whose squarefree part is 1, 2, 3
        or 6 (e.g. 1/2 -> sqrt2/2, 3/4 -> sqrt3/2).  Every state norm in
        the shipped scenarios is of this form.
        """
        if not self.is_rational():
            raise ValueError(f"no square root of {self} in the scalar field")
        if self.a < 0:
            raise ValueError("square root of a negative scalar")
        if self.a == 0:
            return ZERO
        num, den = self.a.numerator, self.a.denominator
        square, free = _square_free_split(num * den)
        root = Fraction(square, den)
        if free == 1:
            return QRoot(root)
        if free == 2:
            return QRoot(Fraction(0), root)
        if free == 3:
            return QRoot(Fraction(0), Fraction(0), root)
        if free == 6:
            return QRoot(Fraction(0), Fraction(0), Fraction(0), root)
        raise ValueError(f"no square root of {self} in the scalar field")

    def __str__(self) -> str:
        parts = []
        for coeff, tag in ((self.a, ""), (self.b, "√2"), (self.c, "√3"), (self.d, "√6")):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if tag and mag == 1:
                body = tag
            elif tag:
                body = f"{mag}{tag}"
            else:
                body = f"{mag}"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__


def _square_free_split(n: int) -> tuple[int, int]:
    """n = square**2 * free with free squarefree; n > 0."""
    square, free = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            square *= p ** (e // 2)
            if e % 2:
                free *= p
        p += 1 if p == 2 else 2
    free *= n
    return square, free


ZERO = QRoot()
ONE = QRoot.rational(1)
HALF = QRoot.rational(Fraction(1, 2))
SQRT2 = QRoot.of(0, 1)
SQRT3 = QRoot.of(0, 0, 1)
SQRT6 = QRoot.of(0, 0, 0, 1)
INV_SQRT2 = QRoot.of(0, Fraction(1, 2))
