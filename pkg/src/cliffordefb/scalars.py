"""Exact scalar fields: rationals Q and Gaussian rationals Q(i).

Real scalars are plain ``fractions.Fraction``; complex mode uses ``QI``, a
pair of Fractions.  The field is chosen per algebra context (the ``field``
tag "Q" or "Qi"), never per scalar.  ``star`` is the coefficient conjugation:
the identity on Q, complex conjugation on Q(i).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FieldMismatchError, MalformedInputError

FIELD_Q = "Q"
FIELD_QI = "Qi"
FIELDS = (FIELD_Q, FIELD_QI)

Scalar = object  # Fraction or QI, depending on field mode


class QI:
    """Gaussian rational re + im*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI values are immutable")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _as_qi(other)
        return QI(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        other = _as_qi(other)
        return QI(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_qi(other) - self

    def __mul__(self, other):
        other = _as_qi(other)
        return QI(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_qi(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return _as_qi(other) / self

    def conjugate(self):
        return QI(self.re, -self.im)

    def __repr__(self):
        return f"QI({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


def _as_qi(x) -> QI:
    if isinstance(x, QI):
        return x
    if isinstance(x, (int, Fraction)):
        return QI(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QI")


def check_field(field: str) -> str:
    if field not in FIELDS:
        raise FieldMismatchError(f"unknown field {field!r}; expected one of {FIELDS}")
    return field


def zero(field: str):
    return QI() if field == FIELD_QI else Fraction(0)


def one(field: str):
    return QI(1) if field == FIELD_QI else Fraction(1)


def coerce(x, field: str):
    """Coerce an int/Fraction/QI into the given field, rejecting cross-field input."""
    if field == FIELD_QI:
        return _as_qi(x)
    if isinstance(x, QI):
        if x.im != 0:
            raise FieldMismatchError("complex scalar used in real field mode")
        return x.re
    return Fraction(x)


def star(x):
    """Coefficient conjugation: identity on Q, complex conjugation on Q(i)."""
    if isinstance(x, QI):
        return x.conjugate()
    return x


def _fmt_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Canonical string form: "p/q" for rationals, "p/q+r/s i" for Q(i)."""
    if isinstance(x, QI):
        if x.im == 0:
            return _fmt_fraction(x.re)
        sign = "+" if x.im > 0 else "-"
        return f"{_fmt_fraction(x.re)}{sign}{_fmt_fraction(abs(x.im))} i"
    return _fmt_fraction(Fraction(x))


_COMPLEX_RE = re.compile(
    r"^(?P<re>[+-]?\d+(?:/\d+)?)(?P<sign>[+-])(?P<im>\d+(?:/\d+)?) i$"
)


def parse_scalar(text: str, field: str):
    """Parse the canonical string form back into a field element."""
    text = text.strip()
    try:
        if field == FIELD_QI:
            match = _COMPLEX_RE.match(text)
            if match:
                im = Fraction(match.group("im"))
                if match.group("sign") == "-":
                    im = -im
                return QI(Fraction(match.group("re")), im)
            return QI(Fraction(text))
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"bad scalar literal {text!r}: {exc}") from exc


def random_scalar(rng, field: str, nonzero: bool = False, height: int = 100):
    """Small-height random scalar; height bounds keep exact elimination fast."""
    def _frac(force_nonzero):
        num = rng.randint(1 if force_nonzero else 0, height)
        if num and rng.random() < 0.5:
            num = -num
        return Fraction(num, rng.randint(1, height))

    if field == FIELD_QI:
        re_part = _frac(False)
        im_part = _frac(False)
        if nonzero and re_part == 0 and im_part == 0:
            re_part = _frac(True)
        return QI(re_part, im_part)
    return _frac(nonzero)
