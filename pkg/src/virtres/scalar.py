"""Exact coefficient fields.

Two fields are supported: the rationals (``QQ``, elements are
:class:`fractions.Fraction`) and prime fields ``GF(p)`` whose elements are
plain ints in ``[0, p)``.  Every field exposes the same small interface so the
polynomial code never branches on the concrete type except through
``field.modulus`` (0 for QQ), which is what the reduction kernel consumes.
"""

from fractions import Fraction
from functools import lru_cache
import re

__all__ = ["Rational", "RationalField", "PrimeField", "QQ", "GF", "normalize",
           "invert", "field_from_spec", "field_to_spec"]

Rational = Fraction

_INT_RE = re.compile(r"^[+-]?\d+$")
_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")


def normalize(n, d):
    """Reduced rational n/d with positive denominator."""
    if d == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(int(n), int(d))


def invert(a, field=None):
    """Multiplicative inverse of ``a`` in ``field`` (QQ when omitted)."""
    field = QQ if field is None else field
    return field.inv(a)


def _parse_ratio(s):
    m = _RAT_RE.match(s.replace("−", "-"))
    if m is None:
        raise ValueError(f"malformed scalar {s!r}")
    n = int(m.group(1))
    d = int(m.group(2)) if m.group(2) is not None else 1
    return n, d


class RationalField:
    """The field of rational numbers."""

    modulus = 0
    characteristic = 0
    name = "QQ"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def normalize(self, n, d):
        return normalize(n, d)

    def inv(self, a):
        a = self(a)
        if a == 0:
            raise ZeroDivisionError("not invertible")
        return 1 / a

    def parse(self, s):
        n, d = _parse_ratio(s)
        return normalize(n, d)

    def format(self, a):
        a = self(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_int_pair(self, a):
        return a.numerator, a.denominator


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The prime field Z/pZ; elements are canonical ints in [0, p)."""

    def __init__(self, p):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.modulus = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.modulus))

    def __call__(self, x):
        p = self.modulus
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError("not invertible")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def normalize(self, n, d):
        if d % self.modulus == 0:
            raise ZeroDivisionError("division by zero")
        return n * pow(d, -1, self.modulus) % self.modulus

    def inv(self, a):
        a = self(a)
        if a == 0:
            raise ZeroDivisionError("not invertible")
        return pow(a, -1, self.modulus)

    def parse(self, s):
        n, d = _parse_ratio(s)
        return self.normalize(n, d)

    def format(self, a):
        return str(self(a))

    def to_int_pair(self, a):
        return a, 1


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def field_from_spec(spec):
    """Decode the ``field`` entry of a points/complex document."""
    if spec is None or spec == "QQ":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return GF(int(spec["Fp"]))
    if isinstance(spec, str) and spec.lower().startswith("fp:"):
        return GF(int(spec[3:]))
    raise ValueError(f"unknown field {spec!r}")


def field_to_spec(field):
    return "QQ" if field.modulus == 0 else {"Fp": field.modulus}
