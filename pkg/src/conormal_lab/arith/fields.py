"""Coefficient fields: exact rationals and prime fields.

Scalars are stored raw for speed: ``gmpy2.mpq`` values for QQ and Python
ints in ``[0, p)`` for GF(p).  The field object owns conversion and
validation; polynomials remember their ring, so two scalars from different
fields never meet in an operation.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import is_prime, mpq

from ..errors import FieldError


class Field:
    name: str
    characteristic: int

    def convert(self, value):
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class RationalField(Field):
    """The field QQ of rational numbers."""

    name = "QQ"
    characteristic = 0
    modulus = 0

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def convert(self, value):
        if isinstance(value, bool):
            raise FieldError(f"cannot interpret {value!r} as a rational number")
        if isinstance(value, int):
            return mpq(value)
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        if type(value) is type(self.zero):
            return value
        if isinstance(value, str):
            try:
                return mpq(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"not a rational literal: {value!r}") from exc
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            return mpq(int(value.numerator), int(value.denominator))
        raise FieldError(f"cannot interpret {value!r} as a rational number")

    def inverse(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def to_python(self, a) -> Fraction:
        return Fraction(int(a.numerator), int(a.denominator))

    def format(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


class PrimeField(Field):
    """The prime field GF(p), p < 2**31."""

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, int):
            raise FieldError(f"modulus must be an integer, got {p!r}")
        if p < 2 or p >= 2**31 or not is_prime(p):
            raise FieldError(f"invalid modulus {p}: need a prime below 2^31")
        self.p = p
        self.modulus = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def convert(self, value):
        p = self.p
        if isinstance(value, bool):
            raise FieldError(f"cannot interpret {value!r} as an element of {self.name}")
        if isinstance(value, int):
            return value % p
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"not a scalar literal: {value!r}") from exc
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise FieldError(f"{value} is not an element of {self.name}")
            return num * pow(den, -1, p) % p
        raise FieldError(f"cannot interpret {value!r} as an element of {self.name}")

    def inverse(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def to_python(self, a) -> int:
        return int(a)

    def format(self, a) -> str:
        return str(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    """Parse a field descriptor such as ``QQ``, ``GF(7)``, ``GF 7`` or ``ZZ/7``."""
    text = name.strip().replace(" ", "")
    if text in ("QQ", "Q"):
        return QQ
    for prefix in ("GF(", "ZZ/(", "ZZ/", "GF", "F"):
        if text.startswith(prefix):
            body = text[len(prefix):].rstrip(")")
            if body.isdigit():
                return PrimeField(int(body))
    raise FieldError(f"unknown field descriptor {name!r}")
