"""Exact scalar arithmetic over the rationals and over prime fields.

Scalars are plain Python values: ``fractions.Fraction`` over Q (always
reduced, positive denominator) and ``int`` residues in ``[0, p)`` over F_p.
A :class:`Field` instance carries the choice of field and supplies the
operations; containers (matrices, tensors, algebras) store one Field and
raise :class:`~homotopelab.errors.FieldMismatch` when mixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatch

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3 * 10^24
# (covers the machine-word moduli we allow).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

MAX_PRIME = 2**63


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n == q:
            return True
        if n % q == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (2 <= self.p < MAX_PRIME):
                raise ValueError(f"modulus {self.p} out of range")
            if not is_prime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")

    # -- constructors ------------------------------------------------

    @staticmethod
    def rationals() -> "Field":
        return Field(None)

    @staticmethod
    def prime(p: int) -> "Field":
        return Field(p)

    @staticmethod
    def parse(text: str) -> "Field":
        """Parse "Q" or "F<p>" (e.g. "F7")."""
        text = text.strip()
        if text == "Q":
            return Field(None)
        if text.startswith("F") and text[1:].isdigit():
            return Field(int(text[1:]))
        raise ValueError(f"unrecognized field spec {text!r}")

    # -- identity ----------------------------------------------------

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def char(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return self.name

    # -- element construction / canonical form -----------------------

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def of(self, value):
        """Coerce an int / Fraction / scalar string into canonical form."""
        if isinstance(value, str):
            return self.parse_scalar(value)
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    # -- arithmetic ---------------------------------------------------

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if self.p is None:
            return Fraction(a) / b
        return a * pow(b, -1, self.p) % self.p

    def pow(self, a, n: int):
        if self.p is None:
            return Fraction(a) ** n
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    # -- text form ----------------------------------------------------

    def format_scalar(self, a) -> str:
        """"num/den" over Q (den omitted when 1), decimal residue over F_p."""
        return str(a)

    def parse_scalar(self, text: str):
        text = text.strip()
        if self.p is None:
            return Fraction(text)
        if "/" in text:
            num, den = text.split("/")
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(text) % self.p

    # -- sampling ------------------------------------------------------

    def random(self, rng, num_bound=9, den_bound=4):
        if self.p is not None:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound))

    def random_nonzero(self, rng, num_bound=9, den_bound=4):
        while True:
            a = self.random(rng, num_bound, den_bound)
            if a != 0:
                return a

    def check_same(self, other: "Field"):
        if self != other:
            raise FieldMismatch(f"{self.name} vs {other.name}")


QQ = Field(None)


def sort_key(a):
    """Canonical ordering key: residue value over F_p, (num, den) lex over Q."""
    if isinstance(a, Fraction):
        return (a.numerator, a.denominator)
    return a
