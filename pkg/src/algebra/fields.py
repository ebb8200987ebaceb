"""
Coefficient fields: the rationals and prime fields GF(p).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from sympy import isprime

from algebra.errors import PreconditionError

Coefficient = Union[int, Fraction]


@dataclass(frozen=True)
class CoefficientField:
    """Either QQ (``modulus is None``) or GF(modulus)."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and not isprime(self.modulus):
            raise PreconditionError(f"GF({self.modulus}): modulus must be prime")

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "CoefficientField":
        return cls(p)

    @classmethod
    def from_spec(cls, text: str) -> "CoefficientField":
        """Parse ``QQ`` or ``GF(p)``."""
        spec = text.strip().replace(" ", "")
        if spec in ("QQ", "Q"):
            return cls.rationals()
        if spec.upper().startswith("GF(") and spec.endswith(")"):
            try:
                return cls.prime(int(spec[3:-1]))
            except ValueError:
                pass
        raise PreconditionError(f"unknown coefficient field '{text}' (expected QQ or GF(p))")

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    @property
    def safe_characteristic(self) -> bool:
        # Characteristic 0 or p >= 5.
        return self.modulus is None or self.modulus >= 5

    def __str__(self) -> str:
        return "QQ" if self.modulus is None else f"GF({self.modulus})"

    # element arithmetic

    @property
    def zero(self) -> Coefficient:
        return Fraction(0) if self.modulus is None else 0

    @property
    def one(self) -> Coefficient:
        return Fraction(1) if self.modulus is None else 1

    def convert(self, value: Coefficient) -> Coefficient:
        if self.modulus is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            num = value.numerator % self.modulus
            den = value.denominator % self.modulus
            if den == 0:
                raise PreconditionError(f"{value} has no image in {self}")
            return num * pow(den, -1, self.modulus) % self.modulus
        return value % self.modulus

    def add(self, a: Coefficient, b: Coefficient) -> Coefficient:
        if self.modulus is None:
            return a + b
        return (a + b) % self.modulus

    def sub(self, a: Coefficient, b: Coefficient) -> Coefficient:
        if self.modulus is None:
            return a - b
        return (a - b) % self.modulus

    def mul(self, a: Coefficient, b: Coefficient) -> Coefficient:
        if self.modulus is None:
            return a * b
        return a * b % self.modulus

    def neg(self, a: Coefficient) -> Coefficient:
        if self.modulus is None:
            return -a
        return -a % self.modulus

    def inv(self, a: Coefficient) -> Coefficient:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.modulus)

    def div(self, a: Coefficient, b: Coefficient) -> Coefficient:
        return self.mul(a, self.inv(b))

    def format(self, value: Coefficient) -> str:
        """Integers as-is, rationals as a/b."""
        if self.modulus is None:
            value = Fraction(value)
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        return str(value)

    def is_negative(self, value: Coefficient) -> bool:
        # Prime-field elements print in [0, p), so they are never negative.
        return self.modulus is None and value < 0


QQ = CoefficientField.rationals()
