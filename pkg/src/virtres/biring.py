"""The bigraded ring k[x0, x1, y0, y1] (plus an elimination variable t).

Monomials are packed into a single non-negative int, the *key*, laid out so
that integer comparison of keys is the monomial order used everywhere in the
package:

    bits 48..55  t exponent               (elimination block, most significant)
    bits 40..47  shifted total degree     (ring degree + twist of the position)
    bits 32..39  255 - position           (module position, lower index larger)
    bits 24..31  255 - exp(y1)
    bits 16..23  255 - exp(y0)
    bits  8..15  255 - exp(x1)
    bits  0..7   255 - exp(x0)

Restricted to t-free ring monomials this is degrevlex with x0 > x1 > y0 > y1;
with t present it is the block order eliminating t; on homogeneous module
elements it is position-over-term.  Multiplying monomials is
``k1 + k2 - ONE`` and exact division is ``k1 - k2 + ONE``.
"""

from enum import Enum
from fractions import Fraction
from itertools import product
from typing import NamedTuple
import re

from .scalar import QQ

FIELD = 255
ONE = (FIELD | FIELD << 8 | FIELD << 16 | FIELD << 24 | 255 << 32)
T_UNIT = 1 << 48
DEG_UNIT = 1 << 40
POS_UNIT = 1 << 32
RING_MASK = (1 << 32) - 1

VARIABLES = ("x0", "x1", "y0", "y1")


class MonomialOrder(Enum):
    DEGREVLEX = "degrevlex"
    ELIM_T = "elim_t"


class BiDegree(NamedTuple):
    i: int
    j: int

    def __add__(self, other):
        return BiDegree(self.i + other[0], self.j + other[1])

    def __sub__(self, other):
        return BiDegree(self.i - other[0], self.j - other[1])

    def preceq(self, other):
        """Componentwise partial order."""
        return self.i <= other[0] and self.j <= other[1]

    def transpose(self):
        return BiDegree(self.j, self.i)

    def __str__(self):
        return f"({self.i},{self.j})"


class Monomial(NamedTuple):
    e0: int
    e1: int
    f0: int
    f1: int
    t: int = 0

    @property
    def bidegree(self):
        return BiDegree(self.e0 + self.e1, self.f0 + self.f1)

    def key(self, pos=0, shift=0):
        return make_key(self.e0, self.e1, self.f0, self.f1, self.t, pos, shift)

    def __str__(self):
        parts = []
        for name, e in zip(VARIABLES + ("t",), self):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def make_key(e0, e1, f0, f1, t=0, pos=0, shift=0):
    if max(e0, e1, f0, f1, t, pos) > FIELD or e0 + e1 + f0 + f1 + shift > FIELD:
        raise OverflowError("exponent outside the packed monomial range")
    return ((FIELD - e0) | (FIELD - e1) << 8 | (FIELD - f0) << 16
            | (FIELD - f1) << 24 | (255 - pos) << 32
            | (e0 + e1 + f0 + f1 + shift) << 40 | t << 48)


def key_monomial(k):
    return Monomial(FIELD - (k & 255), FIELD - ((k >> 8) & 255),
                    FIELD - ((k >> 16) & 255), FIELD - ((k >> 24) & 255), k >> 48)


def key_pos(k):
    return 255 - ((k >> 32) & 255)


def key_bidegree(k):
    return BiDegree(2 * FIELD - (k & 255) - ((k >> 8) & 255),
                    2 * FIELD - ((k >> 16) & 255) - ((k >> 24) & 255))


def key_ring_degree(k):
    i, j = key_bidegree(k)
    return i + j


def key_lcm(a, b):
    """lcm of two monomials at the same position."""
    ma, mb = key_monomial(a), key_monomial(b)
    m = Monomial(*(max(u, v) for u, v in zip(ma, mb)))
    shift = ((a >> 40) & 255) - (ma.e0 + ma.e1 + ma.f0 + ma.f1)
    return m.key(key_pos(a), shift)


def key_divides(a, b):
    if (a ^ b) & (255 << 32):
        return False
    ma, mb = key_monomial(a), key_monomial(b)
    return all(u <= v for u, v in zip(ma, mb))


def key_coprime(a, b):
    ma, mb = key_monomial(a), key_monomial(b)
    return all(u == 0 or v == 0 for u, v in zip(ma, mb))


def move_key(k, pos, shift):
    """Re-home a ring monomial key at module position ``pos`` with twist ``shift``."""
    return k - (pos << 32) + (shift << 40)


def var_key(name):
    idx = VARIABLES.index(name)
    e = [0, 0, 0, 0]
    e[idx] = 1
    return make_key(*e)


def graded_piece_basis(d):
    """Monomials of bidegree ``d``, in decreasing (printing) order."""
    i, j = d
    monos = [Monomial(a, i - a, b, j - b) for a, b in product(range(i + 1), range(j + 1))]
    monos.sort(key=lambda m: m.key(), reverse=True)
    return monos


def dim_piece(d):
    return (d[0] + 1) * (d[1] + 1)


# ---------------------------------------------------------------------------
# polynomials

_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"(\d+(?:/\d+)?)|(x0|x1|y0|y1|t)(?:\^(\d+))?|(\*)")


class BiPoly:
    """Sparse polynomial in k[x0, x1, y0, y1, t] with exact coefficients.

    Terms are held as two parallel tuples sorted by decreasing key.  Instances
    are immutable.
    """

    __slots__ = ("field", "keys", "coefs", "_hash")

    def __init__(self, field=QQ, terms=None):
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                if isinstance(k, Monomial):
                    k = k.key()
                acc[k] = acc.get(k, field.zero) + field(c)
        ks = sorted((k for k, c in acc.items() if c != 0), reverse=True)
        self.field = field
        self.keys = tuple(ks)
        self.coefs = tuple(acc[k] for k in ks)
        self._hash = None

    @classmethod
    def _raw(cls, field, keys, coefs):
        obj = cls.__new__(cls)
        obj.field = field
        obj.keys = tuple(keys)
        obj.coefs = tuple(coefs)
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name, field=QQ):
        return cls._raw(field, (var_key(name),), (field.one,))

    @classmethod
    def constant(cls, c, field=QQ):
        c = field(c)
        return cls._raw(field, (ONE,) if c != 0 else (), (c,) if c != 0 else ())

    @classmethod
    def monomial(cls, m, c=1, field=QQ):
        return cls(field, [(m, c)])

    @classmethod
    def parse(cls, text, field=QQ):
        """Parse the plain-text grammar, e.g. ``"3*x0^2*y1-x1*y0+1/2"``."""
        s = text.replace("−", "-").replace(" ", "")
        if not s:
            raise ValueError("empty polynomial string")
        terms = []
        pos = 0
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"malformed polynomial {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            body = m.group(2)
            if m.group(1) is None and pos > 0:
                raise ValueError(f"malformed polynomial {text!r}")
            coef = field(sign)
            exps = [0, 0, 0, 0, 0]
            seen = False
            q = 0
            while q < len(body):
                f = _FACTOR_RE.match(body, q)
                if f is None or f.end() == q:
                    raise ValueError(f"malformed term {body!r} in {text!r}")
                if f.group(1):
                    coef = coef * field.parse(f.group(1))
                    seen = True
                elif f.group(2):
                    idx = (VARIABLES + ("t",)).index(f.group(2))
                    exps[idx] += int(f.group(3) or 1)
                    seen = True
                q = f.end()
            if not seen:
                raise ValueError(f"malformed term {body!r} in {text!r}")
            terms.append((Monomial(*exps), coef))
            pos = m.end()
        return cls(field, terms)

    # -- basic protocol ----------------------------------------------------

    def __bool__(self):
        return bool(self.keys)

    def is_zero(self):
        return not self.keys

    def __len__(self):
        return len(self.keys)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.constant(other, self.field)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return (self.field == other.field and self.keys == other.keys
                and self.coefs == other.coefs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.keys, self.coefs))
        return self._hash

    def terms(self):
        return [(key_monomial(k), c) for k, c in zip(self.keys, self.coefs)]

    def leading_key(self):
        return self.keys[0]

    def leading_monomial(self):
        return key_monomial(self.keys[0])

    def leading_coefficient(self):
        return self.coefs[0]

    # -- grading -----------------------------------------------------------

    def bidegree(self):
        """The common bidegree of all terms, or None if not bihomogeneous."""
        if not self.keys:
            raise ValueError("zero polynomial has no degree")
        d = key_bidegree(self.keys[0])
        for k in self.keys[1:]:
            if key_bidegree(k) != d:
                return None
        return d

    def is_bihomogeneous(self):
        return bool(self.keys) and self.bidegree() is not None

    def has_t(self):
        return any(k >> 48 for k in self.keys)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if isinstance(other, BiPoly):
            if other.field != self.field:
                raise ValueError(f"mixed fields {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.constant(other, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        acc = dict(zip(self.keys, self.coefs))
        for k, c in zip(other.keys, other.coefs):
            acc[k] = acc.get(k, 0) + c
        return BiPoly(self.field, acc)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw(self.field, self.keys, tuple(self.field(-c) for c in self.coefs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.field(c)
        if c == 0:
            return BiPoly._raw(self.field, (), ())
        return BiPoly._raw(self.field, self.keys, tuple(self.field(c * a) for a in self.coefs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        acc = {}
        for k1, c1 in zip(self.keys, self.coefs):
            for k2, c2 in zip(other.keys, other.coefs):
                k = k1 + k2 - ONE
                acc[k] = acc.get(k, 0) + c1 * c2
        return BiPoly(self.field, acc)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = BiPoly.constant(1, self.field)
        for _ in range(n):
            result = result * self
        return result

    def mul_monomial(self, key):
        return BiPoly._raw(self.field, tuple(k + key - ONE for k in self.keys), self.coefs)

    def monic(self):
        if not self.keys:
            return self
        return self.scale(self.field.inv(self.coefs[0]))

    def map_variables(self, perm):
        """Permute variables; ``perm`` maps positions of (x0, x1, y0, y1)."""
        terms = []
        for m, c in self.terms():
            e = [0, 0, 0, 0]
            for src, dst in enumerate(perm):
                e[dst] = m[src]
            terms.append((Monomial(*e, m.t), c))
        return BiPoly(self.field, terms)

    def transpose(self):
        """Swap x_i <-> y_i."""
        return self.map_variables((2, 3, 0, 1))

    def evaluate(self, values):
        """Evaluate at (x0, x1, y0, y1) values in the coefficient field."""
        total = self.field.zero
        for m, c in self.terms():
            v = c
            for e, a in zip(m[:4], values):
                if e:
                    v = v * a ** e
            total = total + v
        return self.field(total)

    def __str__(self):
        if not self.keys:
            return "0"
        out = []
        for idx, (k, c) in enumerate(zip(self.keys, self.coefs)):
            m = key_monomial(k)
            mono = str(m)
            if self.field.modulus:
                neg = False
                s = self.field.format(c)
            else:
                neg = c < 0
                s = self.field.format(-c if neg else c)
            if mono == "1":
                body = s
            elif s == "1":
                body = mono
            else:
                body = f"{s}*{mono}"
            if idx == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("-" if neg else "+") + body)
        return "".join(out)

    def __repr__(self):
        return f"BiPoly({str(self)!r})"


def poly(text, field=QQ):
    return BiPoly.parse(text, field)


def variables(field=QQ):
    return tuple(BiPoly.var(v, field) for v in VARIABLES)
