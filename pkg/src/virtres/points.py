"""Finite point sets in P1 x P1 and their Hilbert data."""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce as _fold
import json
import random

from . import kernel as _kernel
from .biring import BiDegree, BiPoly, graded_piece_basis
from .gb import Ideal, intersect, minimal_generators
from .scalar import QQ, field_from_spec, field_to_spec

__all__ = ["Point", "PointSet", "PartitionInfo", "ideal_of_point", "ideal_of_points",
           "hilbert_eval", "hilbert_gb", "diff1", "diff2", "partition_info", "conjugate",
           "is_generic_hf", "generic_hf", "predicted_generators", "generator_degrees",
           "check_sufficiently_general", "random_points", "certified_random_points",
           "normalize_convention",
           "swap_coordinates", "change_field", "transpose_matrix", "load_points", "dump_points",
           "NotGenericError"]


class NotGenericError(ValueError):
    """The point set failed the genericity certificate."""


def _normalize_pair(a0, a1, field):
    a0, a1 = field(a0), field(a1)
    if a1 != 0:
        inv = field.inv(a1)
        return field(a0 * inv), field.one
    if a0 == 0:
        raise ValueError("projective coordinates cannot both be zero")
    return field.one, field.zero


@dataclass(frozen=True)
class Point:
    """A point [a0:a1] x [b0:b1]; coordinates scaled so the last nonzero one is 1."""

    A: tuple
    B: tuple

    @classmethod
    def make(cls, a, b, field=QQ):
        return cls(_normalize_pair(*a, field), _normalize_pair(*b, field))

    def swap(self):
        return Point(self.B, self.A)


@dataclass
class PointSet:
    points: tuple
    field: object = QQ
    convention: bool = dc_field(default=False)

    def __post_init__(self):
        pts = []
        for P in self.points:
            if not isinstance(P, Point):
                P = Point.make(P[0], P[1], self.field)
            pts.append(P)
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        self.points = tuple(pts)
        self.convention = all(P.B[0] != 0 for P in self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def pi1(self):
        seen = []
        for P in self.points:
            if P.A not in seen:
                seen.append(P.A)
        return seen


def _linear_form(pair, names, field):
    # pair = (c0, c1) -> c1*names[0] - c0*names[1], scaled to be primitive/monic
    c0, c1 = pair
    u, v = BiPoly.var(names[0], field), BiPoly.var(names[1], field)
    f = u * c1 - v * c0
    if field.modulus:
        return f.monic()
    den = 1
    for c in f.coefs:
        den = den * c.denominator // _gcd(den, c.denominator)
    f = f * den
    if f.coefs[0] < 0:
        f = -f
    return f


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def form_A(A, field=QQ):
    """L_A = a1*x0 - a0*x1."""
    return _linear_form(A, ("x0", "x1"), field)


def form_B(B, field=QQ):
    """L_B = b1*y0 - b0*y1."""
    return _linear_form(B, ("y0", "y1"), field)


def ideal_of_point(P, field=QQ):
    return Ideal([form_A(P.A, field), form_B(P.B, field)], field)


def ideal_of_points(X):
    if len(X) == 0:
        raise ValueError("empty point set")
    return _fold(intersect, [ideal_of_point(P, X.field) for P in X.points])


# ---------------------------------------------------------------------------
# Hilbert functions

def _integer_coords(pair):
    """Scale a rational projective pair to coprime integers."""
    a0, a1 = Fraction(pair[0]), Fraction(pair[1])
    den = a0.denominator * a1.denominator // _gcd(a0.denominator, a1.denominator)
    u, v = int(a0 * den), int(a1 * den)
    g = _gcd(u, v) or 1
    return u // g, v // g


def _eval_row(P, d, field):
    if field.modulus:
        a0, a1 = P.A
        b0, b1 = P.B
    else:
        a0, a1 = _integer_coords(P.A)
        b0, b1 = _integer_coords(P.B)
    return [a0 ** m.e0 * a1 ** m.e1 * b0 ** m.f0 * b1 ** m.f1 for m in graded_piece_basis(d)]


def _rank(rows, field):
    if not rows or not rows[0]:
        return 0
    if field.modulus:
        return _kernel.for_modulus(field.modulus).rank_mod_p(rows, field.modulus)
    return _kernel.for_modulus(0).rank_bareiss(rows)


def hilbert_eval(X, R, C):
    """H_X(i, j) for 0 <= i < R, 0 <= j < C as ranks of evaluation matrices."""
    return [[_rank([_eval_row(P, (i, j), X.field) for P in X.points], X.field)
             for j in range(C)] for i in range(R)]


def hilbert_gb(I, R, C):
    """Count standard monomials of each bidegree w.r.t. the reduced basis of I."""
    from .biring import key_divides
    leads = I.kernel_gb().leads()
    out = []
    for i in range(R):
        row = []
        for j in range(C):
            row.append(sum(1 for m in graded_piece_basis((i, j))
                           if not any(key_divides(l, m.key()) for l in leads)))
        out.append(row)
    return out


def _diff(M):
    R = len(M)
    C = len(M[0]) if R else 0

    def at(i, j):
        return M[i][j] if i >= 0 and j >= 0 else 0

    return [[at(i, j) - at(i - 1, j) - at(i, j - 1) + at(i - 1, j - 1) for j in range(C)]
            for i in range(R)]


def diff1(H):
    return _diff(H)


def diff2(H):
    """Second difference under the rectangle stencil (zero outside N^2)."""
    return _diff(_diff(H))


def rectangle_sum(D):
    """Inverse of one difference step."""
    R = len(D)
    C = len(D[0]) if R else 0
    out = [[0] * C for _ in range(R)]
    for i in range(R):
        for j in range(C):
            out[i][j] = (D[i][j] + (out[i - 1][j] if i else 0) + (out[i][j - 1] if j else 0)
                         - (out[i - 1][j - 1] if i and j else 0))
    return out


def transpose_matrix(M):
    return [list(r) for r in zip(*M)]


# ---------------------------------------------------------------------------
# partitions and genericity

@dataclass(frozen=True)
class PartitionInfo:
    pi1: tuple
    alpha: tuple
    alpha_star: tuple


def conjugate(alpha):
    if not alpha:
        return ()
    return tuple(sum(1 for a in alpha if a >= i) for i in range(1, max(alpha) + 1))


def partition_info(X):
    if len(X) == 0:
        raise ValueError("empty point set")
    counts = {}
    for P in X.points:
        counts[P.A] = counts.get(P.A, 0) + 1
    pi1 = tuple(X.pi1())
    alpha = tuple(sorted(counts.values(), reverse=True))
    return PartitionInfo(pi1, alpha, conjugate(alpha))


def generic_hf(n, R, C):
    return [[min(n, (i + 1) * (j + 1)) for j in range(C)] for i in range(R)]


def default_window(X):
    return len(X) + 2


def is_generic_hf(X, R=None, C=None, H=None):
    R = default_window(X) if R is None else R
    C = default_window(X) if C is None else C
    if R * C < len(X):
        raise ValueError("window too small to certify")
    H = hilbert_eval(X, R, C) if H is None else H
    return H == generic_hf(len(X), R, C)


def predicted_generators(D):
    """Generator degrees read off a second-difference matrix.

    Every negative entry with a positive entry further right in its row or
    further down in its column contributes its absolute value.
    """
    out = {}
    R = len(D)
    C = len(D[0]) if R else 0
    for i in range(R):
        for j in range(C):
            d = D[i][j]
            if d >= 0:
                continue
            if any(D[i][s] > 0 for s in range(j + 1, C)) or any(D[r][j] > 0 for r in range(i + 1, R)):
                out[BiDegree(i, j)] = -d
    return out


def generator_degrees(I):
    """Multiset of bidegrees of a minimal generating set."""
    out = {}
    for g in minimal_generators(I).gens:
        d = BiDegree(*g.bidegree())
        out[d] = out.get(d, 0) + 1
    return out


def check_sufficiently_general(X, I=None):
    """Generic Hilbert function plus exact agreement of generator degrees."""
    w = default_window(X)
    H = hilbert_eval(X, w, w)
    if not is_generic_hf(X, w, w, H=H):
        return False
    I = ideal_of_points(X) if I is None else I
    return generator_degrees(I) == predicted_generators(diff2(H))


def random_points(n, seed, bound, field=QQ):
    """n points [1:c] x [1:c'] with pairwise distinct first and second coordinates."""
    if n < 1 or bound < n:
        raise ValueError("need n >= 1 and bound >= n")
    rng = random.Random(seed)
    for _ in range(100):
        cs = rng.sample(range(1, bound + 1), n)
        ds = rng.sample(range(1, bound + 1), n)
        try:
            pts = [Point.make((1, c), (1, d), field) for c, d in zip(cs, ds)]
        except ZeroDivisionError:
            continue
        if len({P.A for P in pts}) == n and len({P.B for P in pts}) == n:
            return PointSet(tuple(pts), field)
    raise RuntimeError("could not sample distinct coordinates")


def certified_random_points(n, seed, bound, field=QQ, attempts=20):
    """First certified sufficiently general sample, reseeding as ``seed:k``.

    Raises NotGenericError after ``attempts`` failures.
    """
    for attempt in range(attempts):
        X = random_points(n, seed if attempt == 0 else f"{seed}:{attempt}", bound, field)
        if check_sufficiently_general(X):
            return X
    raise NotGenericError(f"no certified general set after {attempts} attempts")


def normalize_convention(X):
    """Change y-coordinates (y0 <- y0 + lam*y1) so that no point has B = [0:1]."""
    if all(P.B[0] != 0 for P in X.points):
        return PointSet(X.points, X.field)
    f = X.field
    lam = 1
    while any(f(P.B[0] + lam * P.B[1]) == 0 for P in X.points):
        lam += 1
    pts = [Point.make(P.A, (P.B[0] + lam * P.B[1], P.B[1]), f) for P in X.points]
    out = PointSet(tuple(pts), f)
    out.shift = lam
    return out


def change_field(X, field):
    """Reduce the coordinates of X into another field (e.g. QQ -> GF(p))."""
    if field == X.field:
        return X
    pts = []
    for P in X.points:
        try:
            pts.append(Point.make(tuple(field(c) for c in P.A), tuple(field(c) for c in P.B), field))
        except (ZeroDivisionError, ValueError) as exc:
            raise ValueError(f"point {P} does not reduce into {field}: {exc}") from None
    if len(set(pts)) != len(pts):
        raise ValueError(f"points collide after reduction into {field}")
    return PointSet(tuple(pts), field)


def swap_coordinates(X):
    return PointSet(tuple(P.swap() for P in X.points), X.field)


# ---------------------------------------------------------------------------
# JSON

def load_points(path_or_obj):
    if isinstance(path_or_obj, (str, bytes)) or hasattr(path_or_obj, "__fspath__"):
        with open(path_or_obj) as fh:
            doc = json.load(fh)
    else:
        doc = path_or_obj
    if not isinstance(doc, dict):
        raise ValueError("points document: top level must be an object")
    try:
        field = field_from_spec(doc.get("field", "QQ"))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"points document: field: {exc}") from None
    raw = doc.get("points")
    if not isinstance(raw, list) or not raw:
        raise ValueError("points document: points: expected a nonempty list")
    pts = []
    for n, entry in enumerate(raw):
        try:
            (a0, a1), (b0, b1) = entry
            pts.append(Point.make((field.parse(str(a0)), field.parse(str(a1))),
                                  (field.parse(str(b0)), field.parse(str(b1))), field))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"points document: points[{n}]: {exc}") from None
    return PointSet(tuple(pts), field)


def points_to_json(X):
    f = X.field
    return {"field": field_to_spec(f),
            "points": [[[f.format(c) for c in P.A], [f.format(c) for c in P.B]]
                       for P in X.points]}


def dump_points(X, path=None):
    doc = points_to_json(X)
    text = json.dumps(doc, indent=1) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
