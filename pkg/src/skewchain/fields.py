"""Exact scalar arithmetic over the rationals and over prime fields.

Scalars are plain Python values rather than wrapper objects, so that the
innermost loops stay cheap:

* over the rationals, a scalar is an ``int`` or a ``fractions.Fraction``;
  every operation canonicalizes a Fraction with denominator 1 back to an
  ``int``, so equal values always have equal (and equally hashable)
  representations;
* over GF(p), a scalar is an ``int`` in ``range(p)``.

A :class:`Field` object supplies the arithmetic and the parsing/formatting
used by the JSON formats.  Values themselves carry no field tag; containers
that hold a field reference (contexts, chain elements, cochains) are the
place where mixing two different fields is detected.

No floating point is used anywhere.  Equality of scalars is exact equality
of canonical representations.
"""

from __future__ import annotations

from fractions import Fraction


class NonPrimeModulus(ValueError):
    """Raised when a prime field is requested for a composite modulus."""


class FieldMismatch(ValueError):
    """Raised when two structures built over different fields are combined."""


class DivisionByZero(ZeroDivisionError):
    """Raised on exact division by the zero scalar."""


class Field:
    """Common interface of the concrete fields.

    Subclasses define ``char``, ``descriptor`` and the arithmetic.  All
    methods take and return canonical plain values (see module docstring).
    """

    char: int
    descriptor: str

    zero = 0
    one = 1

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        raise NotImplementedError

    def parse(self, text: str):
        """Parse a scalar from its string form (used by configs/JSON)."""
        raise NotImplementedError

    def format(self, a) -> str:
        """Inverse of :meth:`parse` on canonical values."""
        return str(a)

    def require_same(self, other: "Field") -> None:
        if self != other:
            raise FieldMismatch(
                f"cannot mix scalars of {self.descriptor} and {other.descriptor}"
            )

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"<Field {self.descriptor}>"


class RationalField(Field):
    """The field of rational numbers with int/Fraction canonical values."""

    char = 0
    descriptor = "Q"

    @staticmethod
    def _canon(a):
        if type(a) is Fraction and a.denominator == 1:
            return int(a)
        return a

    def add(self, a, b):
        return self._canon(a + b)

    def sub(self, a, b):
        return self._canon(a - b)

    def mul(self, a, b):
        return self._canon(a * b)

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return self._canon(Fraction(1, 1) / a)

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by 0 in Q")
        return self._canon(Fraction(a) / b)

    def from_int(self, n):
        return n

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            return self._canon(Fraction(text))
        return int(text)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    """GF(p) for a prime p, with canonical values in range(p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise NonPrimeModulus(f"modulus {p} is not prime")
        self.p = p
        self.char = p
        self.descriptor = f"GF({p})"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n):
        return n % self.p

    def parse(self, text):
        return int(text.strip()) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


#: Shared instance of the rational field.
QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(text: str) -> Field:
    """Build a field from its descriptor string, ``"Q"`` or ``"GF(p)"``."""
    text = text.strip()
    if text == "Q":
        return QQ
    if text.startswith("GF(") and text.endswith(")"):
        return PrimeField(int(text[3:-1]))
    raise ValueError(f"unknown field descriptor {text!r}")
