"""Pure-Python reduction kernel.

A kernel polynomial is a pair of parallel lists ``(keys, coefs)`` sorted by
strictly decreasing monomial key (see :mod:`virtres.biring`).  Coefficients
are ints: reduced mod ``p`` when ``p > 0``, arbitrary integers when ``p == 0``
(rational arithmetic done fraction-free, up to a tracked scalar).

The compiled module ``_kernel`` implements exactly the same functions.
"""

from math import gcd

ONE = 255 | 255 << 8 | 255 << 16 | 255 << 24 | 255 << 32
POS_MASK = 255 << 32
GUARD = (1 << 8 | 1 << 17 | 1 << 26 | 1 << 35 | 1 << 44)


def packed_exponents(k):
    """Exponent vector with guard bits, for branch-free divisibility tests."""
    return ((255 - (k & 255)) | (255 - ((k >> 8) & 255)) << 9
            | (255 - ((k >> 16) & 255)) << 18 | (255 - ((k >> 24) & 255)) << 27
            | (k >> 48) << 36)


def divides(a, b):
    if (a ^ b) & POS_MASK:
        return False
    return ((packed_exponents(b) | GUARD) - packed_exponents(a)) & GUARD == GUARD


def mul_monomial(fk, m):
    shift = m - ONE
    return [k + shift for k in fk]


def lincomb(fk, fc, a, gk, gc, b, m, p):
    """Return ``a*f - b*(m*g)`` as a new kernel polynomial."""
    shift = m - ONE
    rk = []
    rc = []
    i = j = 0
    nf = len(fk)
    ng = len(gk)
    while i < nf and j < ng:
        kf = fk[i]
        kg = gk[j] + shift
        if kf > kg:
            c = a * fc[i]
            if p:
                c %= p
            rk.append(kf)
            rc.append(c)
            i += 1
        elif kf < kg:
            c = -b * gc[j]
            if p:
                c %= p
            rk.append(kg)
            rc.append(c)
            j += 1
        else:
            c = a * fc[i] - b * gc[j]
            if p:
                c %= p
            if c:
                rk.append(kf)
                rc.append(c)
            i += 1
            j += 1
    while i < nf:
        c = a * fc[i]
        if p:
            c %= p
        rk.append(fk[i])
        rc.append(c)
        i += 1
    while j < ng:
        c = -b * gc[j]
        if p:
            c %= p
        rk.append(gk[j] + shift)
        rc.append(c)
        j += 1
    return rk, rc


def primitive(fk, fc, p):
    """Normalise: monic mod p, or primitive with positive leading coefficient.

    Returns ``(keys, coefs, num, den)`` with ``new = (num/den) * old``.
    """
    if not fk:
        return fk, fc, 1, 1
    if p:
        inv = pow(fc[0], -1, p)
        return fk, [c * inv % p for c in fc], inv, 1
    g = gcd(*fc)
    if fc[0] < 0:
        g = -g
    if g == 1:
        return fk, fc, 1, 1
    return fk, [c // g for c in fc], 1, g


def reduce(fk, fc, basis, p, full):
    """Reduce ``f`` by ``basis``.

    ``basis`` is a list of ``(lead_key, keys, coefs)`` whose leading
    coefficients are 1 (mod p) or positive integers.  With ``full`` false only
    the leading term is reduced.  Returns ``(keys, coefs, num, den)`` where the
    result equals ``(num/den) * f`` modulo the span of the basis.
    """
    num = den = 1
    leads = [(packed_exponents(lk), lk & POS_MASK, gk, gc) for lk, gk, gc in basis]
    i = 0
    while i < len(fk):
        k = fk[i]
        pk = packed_exponents(k) | GUARD
        kp = k & POS_MASK
        for lp, lpos, gk, gc in leads:
            if lpos == kp and (pk - lp) & GUARD == GUARD:
                c = fc[i]
                if p:
                    a = 1
                    b = c
                else:
                    lc = gc[0]
                    g = gcd(c, lc)
                    a = lc // g
                    b = c // g
                    num *= a
                fk, fc = lincomb(fk, fc, a, gk, gc, b, k - gk[0] + ONE, p)
                if not p and fc:
                    g = gcd(*fc)
                    if g > 1:
                        fc = [x // g for x in fc]
                        den *= g
                break
        else:
            if not full:
                break
            i += 1
    if not p:
        g = gcd(num, den)
        if g > 1:
            num //= g
            den //= g
    return fk, fc, num, den


def rank_mod_p(rows, p):
    """Rank of an integer matrix over GF(p) by plain elimination."""
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        prow = [x * inv % p for x in m[rank]]
        m[rank] = prow
        for r in range(rank + 1, len(m)):
            f = m[r][col]
            if f:
                row = m[r]
                m[r] = [(x - f * y) % p for x, y in zip(row, prow)]
        rank += 1
    return rank


def rank_bareiss(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            row = m[r]
            prow = m[rank]
            m[r] = [(pv * row[c] - f * prow[c]) // prev for c in range(ncols)]
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def lcm(a, b):
    """lcm of two keys at the same position; keeps the module shift of ``a``."""
    r = 0
    grow = 0
    for s in (0, 8, 16, 24):
        ba, bb = (a >> s) & 255, (b >> s) & 255
        if bb < ba:
            grow += ba - bb
            ba = bb
        r |= ba << s
    ta, tb = a >> 48, b >> 48
    return r | (a & POS_MASK) | (((a >> 40) & 255) + grow) << 40 | max(ta, tb) << 48


def coprime(a, b):
    for s in (0, 8, 16, 24):
        if (a >> s) & 255 != 255 and (b >> s) & 255 != 255:
            return False
    return not (a >> 48 and b >> 48)
