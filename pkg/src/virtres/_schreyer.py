"""Schreyer frames: free resolutions from a Groebner basis.

Level 0 is the reduced Groebner basis g_1..g_m of an ideal.  Level k+1
consists of syzygies of level k obtained by reducing S-pairs to zero and
recording the quotients.  Under the induced (Schreyer) order these
syzygies are again a Groebner basis, so only pairs whose leading terms
generate the lead module are formed and every S-pair reduces to zero by
top reduction alone.

A vector is a dict ``{(index, mono_key): coef}`` where ``mono_key`` is a
packed ring monomial.  The order key of a term ``(i, m)`` is the tuple
``(lead_i * m, -t_1, ..., -t_k, -i)``: the ring key of the image lead
term, then the index tie-breaks of every level below.
"""

from heapq import heapify, heappop, heappush
try:
    from gmpy2 import gcd, mpz
except ImportError:
    from math import gcd
    mpz = int

from . import _kernel_py
from ._kernel_py import ONE


class _Level:
    """Basis of F_k together with the data that orders its terms."""

    def __init__(self, ring_part, ties):
        self.ring_part = ring_part      # ring key of the image of e_i's lead
        self.ties = ties                # tie-break tuple for e_i

    def key(self, i, m):
        return (self.ring_part[i] + m - ONE,) + self.ties[i]


def _lead(vec, level):
    best = None
    bk = None
    for (i, m), c in vec.items():
        k = level.key(i, m)
        if bk is None or k > bk:
            bk, best = k, (i, m)
    return best


def _content(vec, q):
    g = 0
    for c in vec.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    for c in q.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def _reduce_to_zero(vec, q, elems, by_index, level, p, divides):
    """Top-reduce ``vec`` to zero by ``elems``, accumulating quotients in ``q``.

    ``elems[t] = (lead_index, lead_mono, vector)``; invariant: vec = sum q_t * elems[t]
    (in F_k) up to the scalar bookkeeping shared by both sides.
    """
    heap = [(tuple(-x for x in level.key(i, m)), i, m) for (i, m) in vec]
    heapify(heap)
    while vec:
        while True:
            _, i, m = heappop(heap)
            if (i, m) in vec:
                break
        c = vec[(i, m)]
        red = None
        for t in by_index.get(i, ()):
            mu = elems[t][1]
            if divides(mu, m):
                red = t
                break
        if red is None:
            raise ArithmeticError("S-pair does not reduce to zero; frame is not a basis")
        _, mu, g = elems[red]
        lc = g[(i, mu)]
        shift = m - mu
        if p:
            b = c * pow(lc, -1, p) % p
            for (j, n), d in g.items():
                key = (j, n + shift)
                v = (vec.get(key, 0) - b * d) % p
                if v:
                    if key not in vec:
                        heappush(heap, (tuple(-x for x in level.key(j, n + shift)), j, n + shift))
                    vec[key] = v
                else:
                    vec.pop(key, None)
            qk = (red, shift + ONE)
            v = (q.get(qk, 0) - b) % p
            if v:
                q[qk] = v
            else:
                q.pop(qk, None)
            continue
        g0 = gcd(c, lc)
        a, b = lc // g0, c // g0
        if a != 1:
            for key in vec:
                vec[key] *= a
            for key in q:
                q[key] *= a
        for (j, n), d in g.items():
            key = (j, n + shift)
            v = vec.get(key, 0) - b * d
            if v:
                if key not in vec:
                    heappush(heap, (tuple(-x for x in level.key(j, n + shift)), j, n + shift))
                vec[key] = v
            else:
                vec.pop(key, None)
        qk = (red, shift + ONE)
        v = q.get(qk, 0) - b
        if v:
            q[qk] = v
        else:
            q.pop(qk, None)
        if a != 1 and vec:
            g1 = _content(vec, q)
            if g1 > 1:
                for key in vec:
                    vec[key] //= g1
                for key in q:
                    q[key] //= g1
    return q


def _frame_pairs(elems, K):
    """Pairs (a, b), a < b, whose lcm quotients minimally generate the lead module."""
    pairs = []
    for a, (ia, mua, _) in enumerate(elems):
        cands = []
        for b in range(a + 1, len(elems)):
            ib, mub, _ = elems[b]
            if ib != ia:
                continue
            lcm = K.lcm(mua, mub)
            cands.append((lcm - mua + ONE, b))
        cands.sort()
        chosen = []
        for m, b in cands:
            if any(K.divides(c, m) for c, _ in chosen):
                continue
            chosen = [(c, bb) for c, bb in chosen if not K.divides(m, c)]
            chosen.append((m, b))
        pairs.extend((a, b, m) for m, b in chosen)
    return pairs


def resolve_frames(basis, p, K=_kernel_py, max_levels=8):
    """Schreyer resolution of S/I from the reduced basis of I.

    ``basis`` is a list of kernel polynomials (keys, coefs) of an ideal.
    Returns a list of levels; level 0 is the basis itself (as vectors on the
    single index 0) and level k >= 1 lists the syzygy vectors of level k-1.
    ``K`` is the kernel supplying monomial divisibility and lcm.
    """
    divides = K.divides
    elems = []
    for keys, coefs in basis:
        vec = {(0, k): (c if p else mpz(c)) for k, c in zip(keys, coefs)}
        elems.append((0, keys[0], vec))
    level = _Level([ONE], [()])
    levels = [[e[2] for e in elems]]
    for _ in range(max_levels):
        by_index = {}
        for t, (i, mu, _) in enumerate(elems):
            by_index.setdefault(i, []).append(t)
        pairs = _frame_pairs(elems, K)
        if not pairs:
            break
        new_level = _Level([level.key(i, mu)[0] for i, mu, _ in elems],
                           [level.key(i, mu)[1:] + (-t,) for t, (i, mu, _) in enumerate(elems)])
        new_elems = []
        for a, b, ma in pairs:
            ia, mua, ga = elems[a]
            _, mub, gb = elems[b]
            mb = K.lcm(mua, mub) - mub + ONE
            ca, cb = ga[(ia, mua)], gb[(ia, mub)]
            if p:
                fa, fb = cb % p, ca % p
            else:
                g0 = gcd(ca, cb)
                fa, fb = cb // g0, ca // g0
            vec = {}
            for (j, n), d in ga.items():
                vec[(j, n + ma - ONE)] = fa * d
            for (j, n), d in gb.items():
                key = (j, n + mb - ONE)
                v = vec.get(key, 0) - fb * d
                if p:
                    v %= p
                if v:
                    vec[key] = v
                else:
                    vec.pop(key, None)
            if p:
                vec = {k: v % p for k, v in vec.items() if v % p}
            q = {(a, ma): fa, (b, mb): (-fb) % p if p else -fb}
            q = _reduce_to_zero(vec, q, elems, by_index, level, p, divides)
            if not p:
                g1 = _content({}, q)
                if g1 > 1:
                    q = {k: v // g1 for k, v in q.items()}
            lead = max(q, key=lambda t: new_level.key(*t))
            if lead != (a, ma):
                raise ArithmeticError("unexpected Schreyer leading term")
            if p:
                inv = pow(q[lead], -1, p)
                q = {k: v * inv % p for k, v in q.items()}
            elif q[lead] < 0:
                q = {k: -v for k, v in q.items()}
            new_elems.append((lead[0], lead[1], q))
        levels.append([e[2] for e in new_elems])
        elems = new_elems
        level = new_level
    return levels
