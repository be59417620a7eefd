import re
from fractions import Fraction
from functools import lru_cache
from typing import Any

from sympy import GF, isprime

from sqfree_bn.utils.exceptions import InputFormatError, UnsupportedFieldError

# An exact scalar: a Fraction over Q, a sympy modular integer over F_p
FieldScalar = Any

_rational_re = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


class Field:
    """
    An exact field. Elements support + - * / and comparison with 0.
    """

    name: str
    characteristic: int

    @property
    def zero(self) -> FieldScalar:
        return self(0)

    @property
    def one(self) -> FieldScalar:
        return self(1)

    @property
    def is_char_zero(self) -> bool:
        return self.characteristic == 0

    def __call__(self, value) -> FieldScalar:
        raise NotImplementedError

    def parse(self, text: str) -> FieldScalar:
        match = _rational_re.match(str(text))
        if not match:
            raise InputFormatError("scalar", f"not a rational string: {text!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2) or 1)
        if denominator == 0:
            raise InputFormatError("scalar", f"zero denominator in {text!r}")
        return self(numerator) / self(denominator)

    def format(self, value: FieldScalar) -> str:
        raise NotImplementedError

    def require_char_zero(self, operation: str):
        if not self.is_char_zero:
            raise UnsupportedFieldError(
                f"{operation} assumes characteristic 0, got {self.name}"
            )

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return f"Field({self.name})"


class RationalField(Field):
    name = "Q"
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            return self.parse(value)
        return Fraction(value)

    def format(self, value: Fraction) -> str:
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"


class PrimeField(Field):
    def __init__(self, p: int):
        if not isprime(p):
            raise InputFormatError("field", f"{p} is not prime")
        self.characteristic = p
        self.name = f"Fp:{p}"
        self._domain = GF(p, symmetric=False)

    def __call__(self, value) -> FieldScalar:
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self._domain(value.numerator) / self._domain(value.denominator)
        if isinstance(value, int):
            return self._domain(value)
        return self._domain(int(value) % self.characteristic)

    def format(self, value: FieldScalar) -> str:
        return str(int(value) % self.characteristic)


QQ = RationalField()


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """Parses "Q" or "Fp:<p>" """
    spec = spec.strip()
    if spec == "Q":
        return QQ
    if spec.startswith("Fp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise InputFormatError("field", f"bad prime in {spec!r}")
        return prime_field(p)
    raise InputFormatError("field", f"expected 'Q' or 'Fp:<p>', got {spec!r}")
