# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled reduction kernel; same API and results as ``_kernel_py``."""

from math import gcd

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 C_ONE = 255ULL | (255ULL << 8) | (255ULL << 16) | (255ULL << 24) | (255ULL << 32)
cdef u64 C_POS_MASK = 255ULL << 32
cdef u64 C_GUARD = (1ULL << 8) | (1ULL << 17) | (1ULL << 26) | (1ULL << 35) | (1ULL << 44)

ONE = C_ONE
POS_MASK = C_POS_MASK
GUARD = C_GUARD


cdef inline u64 _packed(u64 k) nogil:
    return ((255 - (k & 255)) | ((255 - ((k >> 8) & 255)) << 9)
            | ((255 - ((k >> 16) & 255)) << 18) | ((255 - ((k >> 24) & 255)) << 27)
            | ((k >> 48) << 36))


def packed_exponents(u64 k):
    return _packed(k)


def divides(u64 a, u64 b):
    if (a ^ b) & C_POS_MASK:
        return False
    return ((_packed(b) | C_GUARD) - _packed(a)) & C_GUARD == C_GUARD


def mul_monomial(list fk, u64 m):
    cdef u64 shift = m - C_ONE
    cdef Py_ssize_t i, n = len(fk)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = <u64>fk[i] + shift
    return out


cdef tuple _lincomb_p(list fk, list fc, i64 a, list gk, list gc, i64 b, u64 m, i64 p):
    cdef u64 shift = m - C_ONE
    cdef Py_ssize_t i = 0, j = 0, nf = len(fk), ng = len(gk)
    cdef list rk = []
    cdef list rc = []
    cdef u64 kf, kg
    cdef i64 c
    a %= p
    b %= p
    while i < nf and j < ng:
        kf = <u64>fk[i]
        kg = <u64>gk[j] + shift
        if kf > kg:
            rk.append(kf)
            rc.append((a * <i64>fc[i]) % p)
            i += 1
        elif kf < kg:
            c = (p - (b * <i64>gc[j]) % p) % p
            rk.append(kg)
            rc.append(c)
            j += 1
        else:
            c = ((a * <i64>fc[i]) % p - (b * <i64>gc[j]) % p) % p
            if c < 0:
                c += p
            if c:
                rk.append(kf)
                rc.append(c)
            i += 1
            j += 1
    while i < nf:
        rk.append(fk[i])
        rc.append((a * <i64>fc[i]) % p)
        i += 1
    while j < ng:
        c = (p - (b * <i64>gc[j]) % p) % p
        rk.append(<u64>gk[j] + shift)
        rc.append(c)
        j += 1
    return rk, rc


cdef tuple _lincomb_z(list fk, list fc, object a, list gk, list gc, object b, u64 m):
    cdef u64 shift = m - C_ONE
    cdef Py_ssize_t i = 0, j = 0, nf = len(fk), ng = len(gk)
    cdef list rk = []
    cdef list rc = []
    cdef u64 kf, kg
    cdef object c
    cdef bint a_one = a == 1
    while i < nf and j < ng:
        kf = <u64>fk[i]
        kg = <u64>gk[j] + shift
        if kf > kg:
            rk.append(kf)
            rc.append(fc[i] if a_one else a * fc[i])
            i += 1
        elif kf < kg:
            rk.append(kg)
            rc.append(-b * gc[j])
            j += 1
        else:
            c = (fc[i] if a_one else a * fc[i]) - b * gc[j]
            if c:
                rk.append(kf)
                rc.append(c)
            i += 1
            j += 1
    while i < nf:
        rk.append(fk[i])
        rc.append(fc[i] if a_one else a * fc[i])
        i += 1
    while j < ng:
        rk.append(<u64>gk[j] + shift)
        rc.append(-b * gc[j])
        j += 1
    return rk, rc


def lincomb(list fk, list fc, a, list gk, list gc, b, u64 m, p):
    """Return ``a*f - b*(m*g)`` as a new kernel polynomial."""
    if p:
        return _lincomb_p(fk, fc, a % p, gk, gc, b % p, m, p)
    return _lincomb_z(fk, fc, a, gk, gc, b, m)


def primitive(list fk, list fc, p):
    if not fk:
        return fk, fc, 1, 1
    cdef i64 pp, inv
    if p:
        pp = p
        inv = pow(fc[0], -1, p)
        return fk, [(<i64>c * inv) % pp for c in fc], inv, 1
    g = gcd(*fc)
    if fc[0] < 0:
        g = -g
    if g == 1:
        return fk, fc, 1, 1
    return fk, [c // g for c in fc], 1, g


def reduce(list fk, list fc, list basis, p, bint full):
    """Reduce ``f`` by ``basis``; see ``_kernel_py.reduce``."""
    cdef Py_ssize_t nb = len(basis), i = 0, s
    cdef u64 k, pk, kp
    cdef u64[::1] lp
    cdef u64[::1] lpos
    cdef list gks = [None] * nb
    cdef list gcs = [None] * nb
    cdef list gleads = [None] * nb
    import array
    lp_arr = array.array("Q", [0] * max(nb, 1))
    lpos_arr = array.array("Q", [0] * max(nb, 1))
    lp = lp_arr
    lpos = lpos_arr
    for s in range(nb):
        lk, gk, gc = basis[s]
        lp[s] = _packed(<u64>lk)
        lpos[s] = (<u64>lk) & C_POS_MASK
        gks[s] = gk
        gcs[s] = gc
        gleads[s] = lk
    num = 1
    den = 1
    cdef bint found
    while i < len(fk):
        k = <u64>fk[i]
        pk = _packed(k) | C_GUARD
        kp = k & C_POS_MASK
        found = False
        for s in range(nb):
            if lpos[s] == kp and ((pk - lp[s]) & C_GUARD) == C_GUARD:
                found = True
                break
        if not found:
            if not full:
                break
            i += 1
            continue
        gk = gks[s]
        gc = gcs[s]
        c = fc[i]
        if p:
            fk, fc = _lincomb_p(fk, fc, 1, gk, gc, c % p, k - <u64>gleads[s] + C_ONE, p)
        else:
            lc = gc[0]
            g = gcd(c, lc)
            a = lc // g
            b = c // g
            num *= a
            fk, fc = _lincomb_z(fk, fc, a, gk, gc, b, k - <u64>gleads[s] + C_ONE)
            if fc:
                g = gcd(*fc)
                if g > 1:
                    fc = [x // g for x in fc]
                    den *= g
    if not p:
        g = gcd(num, den)
        if g > 1:
            num //= g
            den //= g
    return fk, fc, num, den


def rank_mod_p(rows, p):
    """Rank of an integer matrix over GF(p)."""
    cdef i64 pp = p
    cdef Py_ssize_t nrows = len(rows), ncols, r, c, col, rank = 0, piv
    if nrows == 0:
        return 0
    ncols = len(rows[0])
    import array
    buf = array.array("q", [0] * (nrows * ncols))
    cdef i64[::1] m = buf
    cdef i64 inv, f, t
    for r in range(nrows):
        row = rows[r]
        for c in range(ncols):
            m[r * ncols + c] = row[c] % p
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if m[r * ncols + col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(ncols):
                t = m[piv * ncols + c]
                m[piv * ncols + c] = m[rank * ncols + c]
                m[rank * ncols + c] = t
        inv = pow(int(m[rank * ncols + col]), -1, p)
        for c in range(ncols):
            m[rank * ncols + c] = (m[rank * ncols + c] * inv) % pp
        for r in range(rank + 1, nrows):
            f = m[r * ncols + col]
            if f:
                for c in range(ncols):
                    m[r * ncols + c] = ((m[r * ncols + c] - f * m[rank * ncols + c]) % pp + pp) % pp
        rank += 1
    return rank


def rank_bareiss(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    cdef list m = [list(row0) for row0 in rows]
    cdef Py_ssize_t nrows = len(m), ncols, rank = 0, col, r, c, piv
    if nrows == 0:
        return 0
    ncols = len(m[0])
    prev = 1
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        pv = prow[col]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            m[r] = [(pv * row[c] - f * prow[c]) // prev for c in range(ncols)]
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def lcm(u64 a, u64 b):
    cdef u64 r = 0, ba, bb, grow = 0, ta = a >> 48, tb = b >> 48
    cdef int s
    for s in range(0, 32, 8):
        ba = (a >> s) & 255
        bb = (b >> s) & 255
        if bb < ba:
            grow += ba - bb
            ba = bb
        r |= ba << s
    return (r | (a & C_POS_MASK) | ((((a >> 40) & 255) + grow) << 40)
            | ((ta if ta > tb else tb) << 48))


def coprime(u64 a, u64 b):
    cdef int s
    for s in range(0, 32, 8):
        if (a >> s) & 255 != 255 and (b >> s) & 255 != 255:
            return False
    return not ((a >> 48) and (b >> 48))
