"""Exact arithmetic in the real quadratic field Q(sqrt2).

Every structure constant in this package lives here, so identity checks are
plain equality tests with no tolerance.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rational = Fraction
Number = Union[int, Fraction, "Scalar"]


class Scalar:
    """The number ``a + b*sqrt2`` with rational ``a`` and ``b``.

    >>> Scalar(1, 1) * Scalar(1, -1)
    Scalar('-1')
    >>> Scalar(0, 1) * Scalar(0, 1)
    Scalar('2')
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)

    @classmethod
    def coerce(cls, x: Number) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return Scalar(self.a + other, self.b)
            return NotImplemented
        return Scalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return Scalar(self.a - other, self.b)
            return NotImplemented
        return Scalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return Scalar(self.a * other, self.b * other)
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        if not b and not d:
            return Scalar(a * c)
        return Scalar(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm a^2 - 2 b^2; zero only for the zero element."""
        return self.a * self.a - 2 * self.b * self.b

    def invert(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        if not self.b:
            return Scalar(1 / self.a)
        nrm = self.norm()
        return Scalar(self.a / nrm, -self.b / nrm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt2)")
            return Scalar(self.a / other, self.b / other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.invert()

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_rational(self) -> bool:
        return not self.b

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    # -- text ------------------------------------------------------------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Scalar({render(self)!r})"


ZERO = Scalar(0)
ONE = Scalar(1)
SQRT2 = Scalar(0, 1)


def arith(x: Number, y: Number, op: str) -> Scalar:
    x, y = Scalar.coerce(x), Scalar.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def invert(x: Number) -> Scalar:
    return Scalar.coerce(x).invert()


def is_zero(x: Number) -> bool:
    return Scalar.coerce(x).is_zero()


def render(x: Scalar) -> str:
    """Canonical text form: ``a``, ``b*sqrt2`` or ``a + b*sqrt2``."""
    a, b = x.a, x.b
    if not b:
        return str(a)
    if not a:
        return f"{b}*sqrt2"
    if b < 0:
        return f"{a} - {-b}*sqrt2"
    return f"{a} + {b}*sqrt2"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<num>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?
        (?P<sqrt>sqrt2)?\s*""",
    re.VERBOSE,
)


def parse(text: str) -> Scalar:
    """Inverse of :func:`render`; also accepts ``sqrt2``, ``-3*sqrt2 + 1/2``."""
    s = text.strip()
    if not s:
        raise ValueError("empty scalar literal")
    a = Fraction(0)
    b = Fraction(0)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"bad scalar literal {text!r}")
        sign, num, star, sqrt = m.group("sign", "num", "star", "sqrt")
        if sign is None and not first:
            raise ValueError(f"bad scalar literal {text!r}")
        if num is None and sqrt is None:
            raise ValueError(f"bad scalar literal {text!r}")
        if star and not sqrt:
            raise ValueError(f"bad scalar literal {text!r}")
        coeff = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            coeff = -coeff
        if sqrt:
            b += coeff
        else:
            a += coeff
        pos = m.end()
        first = False
    return Scalar(a, b)
