"""Groebner bases for ideals and submodules of free modules over S.

Everything here works on *kernel polynomials* (pairs of key/coefficient
lists, see :mod:`virtres._kernel_py`) and wraps them in :class:`Ideal` and
:class:`Submodule` at the boundary.  Module elements are kernel polynomials
whose keys carry a position and a twist; an ideal is the rank-one case.

Buchberger uses the normal selection strategy (smallest lcm first, S-pairs of
a degree before input generators of the same degree), the coprime criterion
for ideals and Buchberger's chain criterion.  Because homogeneous inputs are
consumed degree by degree, an input that reduces to zero when it is reached
is redundant, which is how minimal generating sets are extracted.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce as _fold
from heapq import heappop, heappush
from itertools import combinations_with_replacement
from math import gcd

from . import kernel as _kernel
from .biring import (ONE, T_UNIT, BiDegree, BiPoly, MonomialOrder, key_bidegree,
                     key_divides, key_pos, move_key, var_key)
from .scalar import QQ

__all__ = ["Ideal", "GroebnerBasis", "ModuleElement", "Submodule", "buchberger",
           "normal_form", "intersect", "colon", "saturate", "saturate_B", "power",
           "syzygies", "minimal_generators", "module_saturate_by_B", "irrelevant_ideal",
           "ideal_sum"]


# ---------------------------------------------------------------------------
# conversions

def _to_kernel(f):
    """BiPoly -> (keys, coefs, scale) with kernel = scale * f."""
    p = f.field.modulus
    if p:
        return list(f.keys), list(f.coefs), 1
    den = 1
    for c in f.coefs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coefs]
    g = gcd(*ints) if ints else 1
    if ints and ints[0] < 0:
        g = -g
    return list(f.keys), [c // g for c in ints], Fraction(den, g)


def _from_kernel(field, keys, coefs, monic=True):
    if not keys:
        return BiPoly._raw(field, (), ())
    p = field.modulus
    if p:
        if monic:
            inv = pow(coefs[0], -1, p)
            coefs = [c * inv % p for c in coefs]
        return BiPoly._raw(field, keys, coefs)
    if monic:
        lc = coefs[0]
        return BiPoly._raw(field, keys, [Fraction(c, lc) for c in coefs])
    return BiPoly._raw(field, keys, [Fraction(c) for c in coefs])


def _normalize(K, fk, fc, p):
    fk, fc, _, _ = K.primitive(fk, fc, p)
    return fk, fc


# ---------------------------------------------------------------------------
# Buchberger

def _groebner(inputs, p, ideal_mode=True):
    """Reduced Groebner basis of the module spanned by ``inputs``.

    Returns ``(basis, kept)`` where ``basis`` is a list of ``(lead, keys,
    coefs)`` sorted by increasing lead and ``kept`` lists the indices of the
    inputs that were not redundant when reached.  For homogeneous inputs
    ``kept`` indexes a minimal generating set.
    """
    K = _kernel.for_modulus(p)
    G = []
    heap = []
    pending = set()
    kept = []
    seq = 0
    for idx, (fk, fc) in enumerate(inputs):
        if fk:
            heappush(heap, (fk[0] >> 40, 1, fk[0], seq, idx))
            seq += 1

    def add(hk, hc):
        nonlocal seq
        hk, hc = _normalize(K, hk, hc, p)
        n = len(G)
        lead = hk[0]
        for i, (li, _, _) in enumerate(G):
            if key_pos(li) != key_pos(lead):
                continue
            lcm = K.lcm(li, lead)
            pending.add((i, n))
            heappush(heap, (lcm >> 40, 0, lcm, seq, (i, n)))
            seq += 1
        G.append((lead, hk, hc))

    while heap:
        _, kind, lcm, _, payload = heappop(heap)
        if kind == 1:
            fk, fc = inputs[payload]
            hk, hc, _, _ = K.reduce(list(fk), list(fc), G, p, False)
            if hk:
                kept.append(payload)
                add(hk, hc)
            continue
        i, j = payload
        pending.discard(payload)
        li, gik, gic = G[i]
        lj, gjk, gjc = G[j]
        if ideal_mode and K.coprime(li, lj):
            continue
        skip = False
        for k, (lk, _, _) in enumerate(G):
            if k == i or k == j:
                continue
            if ((min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending
                    and K.divides(lk, lcm)):
                skip = True
                break
        if skip:
            continue
        if p:
            a = b = 1
        else:
            ci, cj = gic[0], gjc[0]
            g = gcd(ci, cj)
            a, b = cj // g, ci // g
        sk = K.mul_monomial(gik, lcm - li + ONE)
        sk, sc = K.lincomb(sk, gic, a, gjk, gjc, b, lcm - lj + ONE, p)
        if not sk:
            continue
        if not p:
            sk, sc = _normalize(K, sk, sc, p)
        hk, hc, _, _ = K.reduce(sk, sc, G, p, False)
        if hk:
            add(hk, hc)

    order = sorted(range(len(G)), key=lambda t: G[t][0])
    minimal = []
    for t in order:
        lead = G[t][0]
        if not any(K.divides(m[0], lead) for m in minimal):
            minimal.append(G[t])
    basis = []
    for t, (lead, hk, hc) in enumerate(minimal):
        others = minimal[:t] + minimal[t + 1:]
        rk, rc, _, _ = K.reduce(list(hk), list(hc), others, p, True)
        rk, rc = _normalize(K, rk, rc, p)
        basis.append((rk[0], rk, rc))
    return basis, kept


class _KernelGB:
    """A reduced Groebner basis in kernel form."""

    def __init__(self, basis, p):
        self.basis = basis
        self.p = p

    def reduce(self, fk, fc):
        K = _kernel.for_modulus(self.p)
        return K.reduce(list(fk), list(fc), self.basis, self.p, True)

    def contains(self, fk, fc):
        if not fk:
            return True
        return not self.reduce(fk, fc)[0]

    def leads(self):
        return [b[0] for b in self.basis]

    def signature(self):
        return tuple((tuple(k), tuple(c)) for _, k, c in self.basis)

    def __eq__(self, other):
        return self.p == other.p and self.signature() == other.signature()


# ---------------------------------------------------------------------------
# ideals

def _coerce_poly(g, field):
    if isinstance(g, str):
        return BiPoly.parse(g, field)
    if isinstance(g, (int, Fraction)):
        return BiPoly.constant(g, field)
    return g


class Ideal:
    """Ideal of S generated by bihomogeneous polynomials."""

    def __init__(self, gens=(), field=None):
        gens = list(gens)
        if field is None:
            field = next((g.field for g in gens if isinstance(g, BiPoly)), QQ)
        polys = []
        for g in gens:
            g = _coerce_poly(g, field)
            if g.field != field:
                raise ValueError("generators over different fields")
            if g.is_zero():
                continue
            if g.has_t() or g.bidegree() is None:
                raise ValueError(f"generator {g} is not bihomogeneous")
            polys.append(g)
        self.field = field
        self.gens = tuple(polys)
        self._kgens = None
        self._gb = None

    @classmethod
    def _from_kernel(cls, field, polys, is_gb=False):
        obj = cls.__new__(cls)
        obj.field = field
        obj.gens = tuple(_from_kernel(field, k, c) for k, c in polys)
        obj._kgens = [(list(k), list(c)) for k, c in polys]
        obj._gb = None
        if is_gb:
            obj._gb = _KernelGB([(k[0], list(k), list(c)) for k, c in polys], field.modulus)
        return obj

    @classmethod
    def unit(cls, field=QQ):
        return cls([BiPoly.constant(1, field)], field)

    def kernel_gens(self):
        if self._kgens is None:
            self._kgens = [_to_kernel(g)[:2] for g in self.gens]
        return self._kgens

    def kernel_gb(self):
        if self._gb is None:
            basis, _ = _groebner(self.kernel_gens(), self.field.modulus, True)
            self._gb = _KernelGB(basis, self.field.modulus)
        return self._gb

    def groebner(self):
        return GroebnerBasis(self.field, self.kernel_gb())

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return any(b[0] == ONE for b in self.kernel_gb().basis)

    def contains(self, f):
        f = _coerce_poly(f, self.field)
        if f.is_zero():
            return True
        k, c, _ = _to_kernel(f)
        return self.kernel_gb().contains(k, c)

    __contains__ = contains

    def is_subset(self, other):
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.field == other.field and self.kernel_gb() == other.kernel_gb()

    def __hash__(self):
        return hash(self.kernel_gb().signature())

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def degrees(self):
        return [g.bidegree() for g in self.gens]


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of an ideal (degrevlex, monic elements)."""

    field: object
    _kgb: _KernelGB
    order: MonomialOrder = MonomialOrder.DEGREVLEX
    reduced: bool = True

    @property
    def elements(self):
        return [_from_kernel(self.field, k, c) for _, k, c in self._kgb.basis]

    def lead_keys(self):
        return self._kgb.leads()

    def __len__(self):
        return len(self._kgb.basis)

    def normal_form(self, f):
        return normal_form(f, self)


def buchberger(gens, order=MonomialOrder.DEGREVLEX, field=None):
    """Reduced Groebner basis of an ideal given by ``gens`` (or an Ideal)."""
    if isinstance(gens, Submodule):
        return gens.kernel_gb()
    ideal = gens if isinstance(gens, Ideal) else Ideal(gens, field)
    return GroebnerBasis(ideal.field, ideal.kernel_gb(), order)


def normal_form(f, gb):
    """Unique remainder of ``f`` modulo the reduced basis ``gb``."""
    if isinstance(gb, Ideal):
        gb = gb.groebner()
    field = gb.field
    f = _coerce_poly(f, field)
    if f.is_zero():
        return f
    k, c, scale = _to_kernel(f)
    rk, rc, num, den = gb._kgb.reduce(k, c)
    if field.modulus:
        return BiPoly._raw(field, rk, rc)
    factor = Fraction(den, num) / scale
    return BiPoly._raw(field, rk, [factor * x for x in rc])


def ideal_sum(*ideals):
    field = ideals[0].field
    return Ideal([g for I in ideals for g in I.gens], field)


def _elim_t(inputs, p, ideal_mode):
    basis, _ = _groebner(inputs, p, ideal_mode)
    return [(k, c) for lead, k, c in basis if lead >> 48 == 0]


def _t_times(k, c):
    return [x + T_UNIT for x in k], list(c)


def _one_minus_t(k, c, p):
    neg = [(-x) % p if p else -x for x in c]
    return [x + T_UNIT for x in k] + list(k), neg + list(c)


def intersect(I, J):
    """I ∩ J by eliminating t from t*I + (1-t)*J."""
    if I.field != J.field:
        raise ValueError("mixed fields")
    if I.is_zero() or J.is_zero():
        return Ideal([], I.field)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    p = I.field.modulus
    inputs = [_t_times(k, c) for k, c in I.kernel_gens()]
    inputs += [_one_minus_t(k, c, p) for k, c in J.kernel_gens()]
    return Ideal._from_kernel(I.field, _elim_t(inputs, p, True), is_gb=True)


def _exact_divide(hk, hc, gk, gc, p):
    """Quotient h / g for g dividing h exactly (kernel form, up to a unit)."""
    K = _kernel._kernel_py
    if len(gk) == 1:
        return [k - gk[0] + ONE for k in hk], list(hc)
    qk, qc = [], []
    if p:
        inv = pow(gc[0], -1, p)
        rk, rc = list(hk), list(hc)
    else:
        rk, rc = list(hk), [Fraction(x) for x in hc]
    while rk:
        if not key_divides(gk[0], rk[0]):
            raise ArithmeticError("polynomial is not divisible")
        m = rk[0] - gk[0] + ONE
        coef = rc[0] * inv % p if p else rc[0] / gc[0]
        qk.append(m)
        qc.append(coef)
        rk, rc = K.lincomb(rk, rc, 1, gk, gc, coef, m, p)
    if not p:
        den = 1
        for x in qc:
            den = den * x.denominator // gcd(den, x.denominator)
        qc = [int(x * den) for x in qc]
    return qk, qc


def _colon_poly(I, g):
    p = I.field.modulus
    gk, gc, _ = _to_kernel(g)
    if gk == [ONE]:
        return I
    meet = intersect(I, Ideal([g], I.field))
    quot = [_exact_divide(k, c, gk, gc, p) for k, c in meet.kernel_gens()]
    return Ideal._from_kernel(I.field, quot)


def colon(I, J):
    """(I : J) as the intersection of (I : g) over the generators g of J."""
    if J.is_zero():
        raise ValueError("colon by the zero ideal")
    return _fold(intersect, [_colon_poly(I, g) for g in J.gens])


def saturate(I, J):
    """I : J^∞ by iterating colons until the ideal stops growing."""
    current = I
    while True:
        nxt = colon(current, J)
        if nxt == current:
            return current
        current = nxt


def _ideal_of_vars(names, field):
    return Ideal([BiPoly.var(v, field) for v in names], field)


def irrelevant_ideal(field=QQ):
    x0, x1, y0, y1 = (BiPoly.var(v, field) for v in ("x0", "x1", "y0", "y1"))
    return Ideal([x0 * y0, x0 * y1, x1 * y0, x1 * y1], field)


def saturate_B(I):
    """B-saturation computed as (I : <x0,x1>^∞) : <y0,y1>^∞."""
    field = I.field
    return saturate(saturate(I, _ideal_of_vars(("x0", "x1"), field)),
                    _ideal_of_vars(("y0", "y1"), field))


def power(I, a):
    if a < 0:
        raise ValueError("negative exponent")
    if a == 0:
        return Ideal.unit(I.field)
    gens = []
    seen = set()
    for combo in combinations_with_replacement(I.gens, a):
        prod = _fold(lambda u, v: u * v, combo)
        if prod not in seen:
            seen.add(prod)
            gens.append(prod)
    return Ideal(gens, I.field)


# ---------------------------------------------------------------------------
# modules

@dataclass(frozen=True)
class ModuleElement:
    """An element of the free module ⊕ S(-shift_c), as a component vector."""

    components: tuple
    shifts: tuple

    def degree(self):
        for c, s in zip(self.components, self.shifts):
            if not c.is_zero():
                d = c.bidegree()
                return None if d is None else BiDegree(d[0] + s[0], d[1] + s[1])
        return None

    def is_zero(self):
        return all(c.is_zero() for c in self.components)


def _shift_total(s):
    return s[0] + s[1]


def _column_to_kernel(column, shifts, field, with_scale=False):
    """Components (BiPolys) -> kernel module element.

    The element is normalised (primitive or monic); with ``with_scale`` the
    factor ``lam`` with ``kernel = lam * column`` is returned as well.
    """
    terms = []
    for pos, (f, s) in enumerate(zip(column, shifts)):
        st = _shift_total(s)
        for k, c in zip(f.keys, f.coefs):
            terms.append((move_key(k, pos, st), c))
    terms.sort(key=lambda t: t[0], reverse=True)
    keys = [t[0] for t in terms]
    if field.modulus:
        out = keys, [t[1] for t in terms]
        return (out, 1) if with_scale else out
    den = 1
    for _, c in terms:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for _, c in terms]
    g = gcd(*ints) if ints else 1
    if ints and ints[0] < 0:
        g = -g
    out = keys, [c // g for c in ints]
    return (out, Fraction(den, g)) if with_scale else out


def _kernel_to_column(keys, coefs, shifts, field):
    rank = len(shifts)
    buckets = [([], []) for _ in range(rank)]
    for k, c in zip(keys, coefs):
        pos = key_pos(k)
        ring = k + (pos << 32) - (_shift_total(shifts[pos]) << 40)
        buckets[pos][0].append(ring)
        buckets[pos][1].append(c if field.modulus else Fraction(c))
    return tuple(BiPoly._raw(field, ks, cs) for ks, cs in buckets)


def _kernel_degree(keys, shifts):
    d = key_bidegree(keys[0])
    s = shifts[key_pos(keys[0])]
    return BiDegree(d[0] + s[0], d[1] + s[1])


class Submodule:
    """Submodule of the free module F = ⊕ S(-shifts[c]) given by generators."""

    def __init__(self, shifts, gens=(), field=QQ):
        self.shifts = tuple(BiDegree(*s) for s in shifts)
        self.field = field
        if len(self.shifts) > 200:
            raise OverflowError("free module rank too large for packed positions")
        kg = []
        for g in gens:
            if isinstance(g, ModuleElement):
                g = g.components
            if isinstance(g, tuple) and len(g) == 2 and isinstance(g[0], list):
                kg.append((list(g[0]), list(g[1])))
                continue
            if len(g) != len(self.shifts):
                raise ValueError("generator rank does not match the ambient module")
            kg.append(_column_to_kernel(g, self.shifts, field))
        self._kgens = [g for g in kg if g[0]]
        self._gb = None

    @property
    def rank(self):
        return len(self.shifts)

    @classmethod
    def _from_kernel(cls, shifts, polys, field, is_gb=False):
        obj = cls(shifts, (), field)
        obj._kgens = [(list(k), list(c)) for k, c in polys if k]
        if is_gb:
            obj._gb = _KernelGB([(k[0], list(k), list(c)) for k, c in obj._kgens],
                                field.modulus)
        return obj

    def kernel_gens(self):
        return self._kgens

    def kernel_gb(self):
        if self._gb is None:
            basis, _ = _groebner(self._kgens, self.field.modulus, False)
            self._gb = _KernelGB(basis, self.field.modulus)
        return self._gb

    @property
    def generators(self):
        return [ModuleElement(_kernel_to_column(k, c, self.shifts, self.field), self.shifts)
                for k, c in self._kgens]

    def columns(self):
        return [_kernel_to_column(k, c, self.shifts, self.field) for k, c in self._kgens]

    def degrees(self):
        return [_kernel_degree(k, self.shifts) for k, _ in self._kgens]

    def is_zero(self):
        return not self._kgens

    def contains(self, element):
        if isinstance(element, ModuleElement):
            element = element.components
        if isinstance(element, tuple) and len(element) == 2 and isinstance(element[0], list):
            k, c = element
        else:
            k, c = _column_to_kernel(element, self.shifts, self.field)
        if not k:
            return True
        return self.kernel_gb().contains(k, c)

    def contains_module(self, other):
        gb = self.kernel_gb()
        return all(gb.contains(k, c) for k, c in other.kernel_gens())

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return (self.shifts == other.shifts and self.field == other.field
                and self.kernel_gb() == other.kernel_gb())

    def __repr__(self):
        return f"Submodule(rank={self.rank}, ngens={len(self._kgens)})"


def _as_submodule(M):
    if isinstance(M, Ideal):
        return Submodule._from_kernel([BiDegree(0, 0)], M.kernel_gens(), M.field)
    return M


def _syzygies_kernel(gens, degrees, r, field, scales=None):
    # scales[i] = lam_i means gens[i] is lam_i times the true generator
    p = field.modulus
    m = len(degrees)
    if r + m > 255:
        raise OverflowError("too many generators for packed positions")
    aug = []
    for i, ((gk, gc), d) in enumerate(zip(gens, degrees)):
        e = ONE - ((r + i) << 32) + (_shift_total(d) << 40)
        lam = Fraction(1) if scales is None else Fraction(scales[i])
        if p:
            aug.append((list(gk) + [e], list(gc) + [lam.numerator * pow(lam.denominator, -1, p) % p]))
        else:
            aug.append((list(gk) + [e], [c * lam.denominator for c in gc] + [lam.numerator]))
    basis, _ = _groebner(aug, p, False)
    out = [([x + (r << 32) for x in k], c) for lead, k, c in basis if key_pos(lead) >= r]
    return Submodule._from_kernel(degrees, out, field, is_gb=True)


def syzygies(M):
    """Generators of the syzygy module of M's generator list.

    The syzygies live in ⊕ S(-deg g_i).  They are read off a Groebner basis
    of the augmented module spanned by (g_i, e_i) under the position-first
    order, whose elements supported on the e-block generate the syzygies.
    """
    if isinstance(M, Ideal):
        return syzygies_of_columns(M.field, [BiDegree(*g.bidegree()) for g in M.gens],
                                   [BiDegree(0, 0)], [(g,) for g in M.gens])
    gens = M.kernel_gens()
    degrees = [_kernel_degree(k, M.shifts) for k, _ in gens]
    return _syzygies_kernel(gens, degrees, M.rank, M.field)


def syzygies_of_columns(field, source_shifts, target_shifts, columns):
    """Kernel of the matrix with the given columns, as a submodule of the source.

    Zero columns are allowed; their twists come from ``source_shifts``.
    """
    conv = [_column_to_kernel(col, target_shifts, field, True) for col in columns]
    return _syzygies_kernel([g for g, _ in conv], [BiDegree(*s) for s in source_shifts],
                            len(target_shifts), field, [lam for _, lam in conv])


def minimal_generators(M):
    """A minimal homogeneous generating set (same type as the input)."""
    if isinstance(M, Ideal):
        gb = M.kernel_gb().basis
        polys = [(k, c) for _, k, c in gb]
        _, kept = _groebner(polys, M.field.modulus, True)
        return Ideal._from_kernel(M.field, [polys[i] for i in sorted(kept)])
    polys = M.kernel_gens()
    if M._gb is not None:
        polys = [(k, c) for _, k, c in M._gb.basis]
    _, kept = _groebner(polys, M.field.modulus, False)
    return Submodule._from_kernel(M.shifts, [polys[i] for i in sorted(kept)], M.field)


def _module_intersect(M, N):
    p = M.field.modulus
    if M.is_zero() or N.is_zero():
        return Submodule._from_kernel(M.shifts, [], M.field)
    inputs = [_t_times(k, c) for k, c in M.kernel_gens()]
    inputs += [_one_minus_t(k, c, p) for k, c in N.kernel_gens()]
    return Submodule._from_kernel(M.shifts, _elim_t(inputs, p, False), M.field, is_gb=True)


def _module_colon_monomial(M, mkey):
    """(M : m) for a monomial m, via M ∩ mF."""
    p = M.field.modulus
    if M.is_zero():
        return M
    free = [([move_key(mkey, c, _shift_total(s))], [1]) for c, s in enumerate(M.shifts)]
    inputs = [_t_times(k, c) for k, c in M.kernel_gens()]
    inputs += [_one_minus_t(k, c, p) for k, c in free]
    meet = _elim_t(inputs, p, False)
    quot = [([x - mkey + ONE for x in k], c) for k, c in meet]
    return Submodule._from_kernel(M.shifts, quot, M.field)


def module_saturate_by_B(M):
    """{m in F : B^t m ⊆ M for some t}, by iterating (M : B) to a fixed point."""
    if M.is_zero():
        return M
    bkeys = [var_key(a) + var_key(b) - ONE for a in ("x0", "x1") for b in ("y0", "y1")]
    current = M
    while True:
        parts = [_module_colon_monomial(current, k) for k in bkeys]
        nxt = _fold(_module_intersect, parts)
        if nxt == current:
            return current
        current = nxt
