"""Virtual resolutions of points in P1 x P1.

Certification (``is_virtual``), trimming a minimal resolution at a degree in
the regularity region, the explicit length-two shape for |X| = (i+1)(j+1),
and the saturation construction S/(I_X ∩ <x0,x1>^a).
"""

from dataclasses import dataclass, field as dc_field
from math import ceil

from .biring import BiDegree, BiPoly
from .gb import Ideal, intersect, power, saturate_B
from .points import (check_sufficiently_general, diff2, form_A, generic_hf, hilbert_eval,
                     ideal_of_points, is_generic_hf, partition_info, swap_coordinates,
                     transpose_matrix)
from .resolve import (BettiTable, FreeBiModule, FreeComplex, betti, homology_B_torsion,
                      min_free_resolution, shift_str, verify_complex)

__all__ = ["VirtualCert", "FormulaShape", "ConjecturalTrim", "is_virtual", "trim",
           "formula_shape", "expected_delta2_submatrix", "expected_trim_counts",
           "vres_saturation", "min_sat_exponent", "keylemma_check", "conjectural_trim",
           "regularity_minimal_elements", "trim_points", "x_ideal", "in_generic_reg",
           "default_conjectural_degree", "mirrored_points"]


@dataclass
class VirtualCert:
    torsion: list
    h0_saturation: bool
    virtual: bool = dc_field(init=False)

    def __post_init__(self):
        self.virtual = all(self.torsion) and self.h0_saturation

    def to_json(self):
        return {"torsion": list(self.torsion), "h0_saturation": self.h0_saturation,
                "virtual": self.virtual}

    def __bool__(self):
        return self.virtual


def is_virtual(C, I, assume_saturated=False):
    """Certify that C is a virtual resolution of S/I.

    Every H_k (k >= 1) must be B-torsion and the B-saturation of the ideal
    of entries of d_1 must equal I.
    """
    if C.modules[0].rank != 1 or C.modules[0].shifts[0] != (0, 0):
        raise ValueError("unsupported H₀ shape")
    if not assume_saturated and saturate_B(I) != I:
        raise ValueError("target not B-saturated")
    torsion = [homology_B_torsion(C, k) for k in range(1, C.length + 1)]
    if C.length:
        J = Ideal([f for f in C.maps[0][0] if f], I.field)
    else:
        J = Ideal([], I.field)
    # I is saturated, so J = I settles the H0 condition without a saturation
    return VirtualCert(torsion, J == I or saturate_B(J) == I)


# ---------------------------------------------------------------------------
# trimming

def in_generic_reg(n, d):
    return (d[0] + 1) * (d[1] + 1) >= n


def regularity_minimal_elements(n):
    """Minimal (i, j) with (i+1)(j+1) >= n."""
    out = []
    for i in range(n):
        j = max(0, ceil(n / (i + 1)) - 1)
        if not out or j < out[-1][1]:
            out.append(BiDegree(i, j))
    return out


def trim(C, d, X=None, n=None, generic=None):
    """Keep the summands of C generated in degrees ⪯ d + (1, 1).

    The generic-points description of reg_B is used to check the input, so
    either the point set ``X`` or its size ``n`` together with a precomputed
    ``generic`` verdict must be given.
    """
    d = BiDegree(*d)
    if X is not None:
        n = len(X)
        generic = is_generic_hf(X)
    if n is None or generic is None:
        raise ValueError("trim needs the point set to check the regularity criterion")
    if not generic or not in_generic_reg(n, d):
        raise ValueError("d not in reg_B (generic criterion)")
    bound = d + BiDegree(1, 1)
    keep = [[t for t, s in enumerate(m.shifts) if s.preceq(bound)] for m in C.modules]
    modules = [FreeBiModule([m.shifts[t] for t in idx]) for m, idx in zip(C.modules, keep)]
    maps = []
    for k, M in enumerate(C.maps):
        maps.append([[M[r][c] for c in keep[k + 1]] for r in keep[k]])
    out = FreeComplex(modules, maps, C.field).drop_trailing_zeros()
    if not verify_complex(out):
        raise ArithmeticError("trimmed complex fails d∘d = 0")
    return out


def trim_points(X, d, I=None):
    """Trim the minimal resolution of S/I_X at d; also returns the certificate."""
    I = ideal_of_points(X) if I is None else I
    C = trim(min_free_resolution(I), d, X)
    return C, is_virtual(C, I, assume_saturated=True)


# ---------------------------------------------------------------------------
# the length-two formula

@dataclass(frozen=True)
class FormulaShape:
    n: int
    i: int
    j: int
    q: int
    r: int
    middle: dict
    top: dict

    def betti(self):
        entries = {(1, d): m for d, m in self.middle.items()}
        entries.update({(2, d): m for d, m in self.top.items()})
        return BettiTable(entries)

    def transpose(self):
        return FormulaShape(self.n, self.j, self.i, self.q, self.r,
                            {d.transpose(): m for d, m in self.middle.items()},
                            {d.transpose(): m for d, m in self.top.items()})

    def lines(self):
        def fmt(shape):
            return " + ".join(shift_str(d, m) for d, m in sorted(shape.items(), reverse=True))
        return [f"top {fmt(self.top)}", f"middle {fmt(self.middle)}"]


def _check_formula_args(n, i, j):
    if n <= 1:
        raise ValueError("need |X| > 1")
    if i < 0 or j < 0:
        raise ValueError("need i, j >= 0")
    if i == j:
        raise ValueError("need i != j (i < j, or i > j by symmetry)")
    if n != (i + 1) * (j + 1):
        raise ValueError("need |X| = (i+1)(j+1)")


def formula_shape(n, i, j):
    """Betti shape of the length-two virtual resolution for |X| = (i+1)(j+1)."""
    _check_formula_args(n, i, j)
    if i > j:
        return formula_shape(n, j, i).transpose()
    q, r = divmod(n, i + 2)
    middle = {BiDegree(i, j + 1): i + 1, BiDegree(i + 1, q): i + 2 - r}
    if r:
        middle[BiDegree(i + 1, q + 1)] = r
    top = {BiDegree(i + 1, j + 1): 2 * i + 2}
    return FormulaShape(n, i, j, q, r, middle, top)


def expected_delta2_submatrix(n, i, j):
    """Rows 0..i+1 and columns 0..j+1 of Δ²H_X forced by |X| = (i+1)(j+1)."""
    _check_formula_args(n, i, j)
    if i > j:
        return transpose_matrix(expected_delta2_submatrix(n, j, i))
    q, r = divmod(n, i + 2)
    D = [[0] * (j + 2) for _ in range(i + 2)]
    D[0][0] += 1
    if i == 0:
        D[0][j + 1] += -1
        D[1][q] += -2 + r
        if q + 1 <= j + 1:
            D[1][q + 1] += -r
        D[1][j + 1] += 2
    elif q < j:
        D[i][j + 1] += -i - 1
        D[i + 1][q] += -i - 2 + r
        D[i + 1][q + 1] += -r
        D[i + 1][j + 1] += 2 * i + 2
    else:
        # q = j = i+1, r = 0
        D[i][j + 1] += -i - 1
        D[i + 1][j] += -i - 2
        D[i + 1][j + 1] += 2 * i + 2
    return D


def expected_trim_counts(n, i, j):
    """(alpha, beta, gamma) on degrees ⪯ (i+1, j+1) for the trimmed resolution."""
    _check_formula_args(n, i, j)
    if i > j:
        a, b, g = expected_trim_counts(n, j, i)
        tr = lambda m: {d.transpose(): v for d, v in m.items()}
        return tr(a), tr(b), tr(g)
    D = expected_delta2_submatrix(n, i, j)
    alpha = {BiDegree(a, b): -D[a][b] for a in range(i + 2) for b in range(j + 2) if D[a][b] < 0}
    beta = {BiDegree(i + 1, j + 1): 2 * i + 2}
    return alpha, beta, {}


# ---------------------------------------------------------------------------
# saturation construction

def x_ideal(field):
    return Ideal([BiPoly.var("x0", field), BiPoly.var("x1", field)], field)


def vres_saturation(X, a=None, I=None):
    """Minimal resolution of S/(I_X ∩ <x0,x1>^a); length two once a >= |π1(X)| - 1."""
    ell = len(partition_info(X).pi1)
    a = ell - 1 if a is None else a
    if a < 0:
        raise ValueError("exponent must be non-negative")
    I = ideal_of_points(X) if I is None else I
    J = intersect(I, power(x_ideal(X.field), a))
    C = min_free_resolution(J)
    if a >= ell - 1 and C.length != 2:
        raise ArithmeticError(f"length {C.length} resolution at a = {a} >= |π1(X)| - 1")
    return C


def min_sat_exponent(X, a_max, I=None):
    """Smallest a <= a_max with pd S/(I_X ∩ <x0,x1>^a) = 2, or None."""
    ell = len(partition_info(X).pi1)
    I = ideal_of_points(X) if I is None else I
    for a in range(a_max + 1):
        J = intersect(I, power(x_ideal(X.field), a))
        if min_free_resolution(J).length == 2:
            return a
        if a >= ell - 1:
            raise ArithmeticError(f"no length-two resolution at a = {a} >= |π1(X)| - 1")
    return None


def keylemma_check(X, a, I=None):
    """Two-sided check of the primary decomposition of <I_X ∩ <x0,x1>^a, y0>."""
    ell = len(partition_info(X).pi1)
    if not all(P.B[0] != 0 for P in X.points):
        raise ValueError("y0 is a zero-divisor on S/I_X; apply normalize_convention first")
    if a < ell - 1:
        raise ValueError(f"need a >= |π1(X)| - 1 = {ell - 1}")
    f = X.field
    I = ideal_of_points(X) if I is None else I
    y0, y1 = BiPoly.var("y0", f), BiPoly.var("y1", f)
    xa = power(x_ideal(f), a)
    lhs = Ideal(list(intersect(I, xa).gens) + [y0], f)
    fibers = {}
    for P in X.points:
        fibers[P.A] = fibers.get(P.A, 0) + 1
    parts = [Ideal([y0, y1 ** m, form_A(A, f)], f) for A, m in fibers.items()]
    parts.append(Ideal(list(xa.gens) + [y0], f))
    rhs = parts[0]
    for P in parts[1:]:
        rhs = intersect(rhs, P)
    return lhs.is_subset(rhs) and rhs.is_subset(lhs)


# ---------------------------------------------------------------------------
# experimental: trimming at a minimal element of the regularity region

@dataclass
class ConjecturalTrim:
    """Evidence record; the certificate is the ground truth, not the prediction."""

    at: BiDegree
    complex: FreeComplex
    cert: VirtualCert
    predicted: BettiTable
    matches_prediction: bool
    formula_case: bool
    experimental: bool = True


def _predicted_two_step(H, at):
    D = diff2(H)
    i, j = at
    middle, top = {}, {}
    for a in range(i + 2):
        for b in range(j + 2):
            if (a, b) == (0, 0):
                continue
            d = D[a][b]
            if d < 0:
                middle[BiDegree(a, b)] = -d
            elif d > 0:
                top[BiDegree(a, b)] = d
    entries = {(1, k): v for k, v in middle.items()}
    entries.update({(2, k): v for k, v in top.items()})
    return BettiTable(entries)


def default_conjectural_degree(n):
    cands = [d for d in regularity_minimal_elements(n) if d.i <= d.j]
    return max(cands, key=lambda d: d.i)


def conjectural_trim(X, at=None, I=None):
    n = len(X)
    if n < 2:
        raise ValueError("need |X| > 1")
    I = ideal_of_points(X) if I is None else I
    if not check_sufficiently_general(X, I):
        raise ValueError("point set is not certified sufficiently general")
    at = default_conjectural_degree(n) if at is None else BiDegree(*at)
    if at not in regularity_minimal_elements(n):
        raise ValueError(f"{tuple(at)} is not a minimal element of the regularity region")
    w = max(n + 2, at.i + 3, at.j + 3)
    H = hilbert_eval(X, w, w)
    C = trim(min_free_resolution(I), at, n=n, generic=H == generic_hf(n, w, w))
    cert = is_virtual(C, I, assume_saturated=True)
    predicted = _predicted_two_step(H, at)
    return ConjecturalTrim(at, C, cert, predicted, betti(C) == predicted,
                           n == (at.i + 1) * (at.j + 1) and at.i != at.j)


def mirrored_points(X):
    """Swap the two factors of P1 x P1."""
    return swap_coordinates(X)
