"""Bigraded free complexes, minimal free resolutions and Betti tables."""

from collections import Counter
from fractions import Fraction
from dataclasses import dataclass
import json

from . import kernel as _backend
from ._schreyer import resolve_frames
from .biring import BiDegree, BiPoly, key_bidegree
from .gb import Submodule, module_saturate_by_B, syzygies_of_columns
from .scalar import QQ, field_from_spec, field_to_spec

__all__ = ["FreeBiModule", "FreeComplex", "BettiTable", "min_free_resolution",
           "minimalize", "betti", "projective_dimension", "depth", "verify_complex",
           "homology_B_torsion", "load_complex", "dump_complex"]


def shift_str(d, mult=1):
    """``S(-a,-b)^m`` with zero entries printed as 0."""
    base = "S" if tuple(d) == (0, 0) else f"S({-d[0]},{-d[1]})"
    return base + (f"^{mult}" if mult > 1 else "")


@dataclass(frozen=True)
class FreeBiModule:
    """⊕ S(-a, -b) over the listed shifts (a, b), in basis order."""

    shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(BiDegree(*s) for s in self.shifts))

    @property
    def rank(self):
        return len(self.shifts)

    def canonical(self):
        return tuple(sorted(self.shifts))

    def __eq__(self, other):
        if not isinstance(other, FreeBiModule):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __str__(self):
        if not self.shifts:
            return "0"
        return " + ".join(shift_str(s, m) for s, m in sorted(Counter(self.shifts).items()))


def _zero(field):
    return BiPoly._raw(field, (), ())


class FreeComplex:
    """F_0 <- F_1 <- ... <- F_p.

    ``maps[k]`` is the matrix of d_{k+1}: F_{k+1} -> F_k as a list of rows,
    rows indexed by the basis of F_k and columns by the basis of F_{k+1}.
    """

    def __init__(self, modules, maps, field=QQ):
        self.modules = [m if isinstance(m, FreeBiModule) else FreeBiModule(m) for m in modules]
        self.maps = [[list(row) for row in M] for M in maps]
        self.field = field
        if len(self.maps) != len(self.modules) - 1:
            raise ValueError("need exactly one map between consecutive modules")
        for k, M in enumerate(self.maps):
            if len(M) != self.modules[k].rank:
                raise ValueError(f"map {k + 1}: row count does not match target rank")
            for row in M:
                if len(row) != self.modules[k + 1].rank:
                    raise ValueError(f"map {k + 1}: column count does not match source rank")

    @property
    def length(self):
        return len(self.maps)

    def ranks(self):
        return [m.rank for m in self.modules]

    def differential(self, k):
        """Matrix of d_k: F_k -> F_{k-1}, for 1 <= k <= length."""
        return self.maps[k - 1]

    def columns(self, k):
        M = self.maps[k - 1]
        n = self.modules[k].rank
        return [tuple(row[c] for row in M) for c in range(n)]

    def transpose(self):
        return FreeComplex([[s.transpose() for s in m.shifts] for m in self.modules],
                           [[[f.transpose() for f in row] for row in M] for M in self.maps],
                           self.field)

    def drop_trailing_zeros(self):
        while self.modules and len(self.modules) > 1 and self.modules[-1].rank == 0:
            self.modules.pop()
            self.maps.pop()
        return self

    def __repr__(self):
        return f"FreeComplex(ranks={self.ranks()})"

    def __str__(self):
        return " <- ".join(str(m) for m in self.modules)


class BettiTable:
    """Multiplicities of shifts at homological indices k >= 1."""

    def __init__(self, entries=None):
        self.entries = {}
        for (k, d), m in (entries or {}).items():
            if m:
                self.entries[(k, BiDegree(*d))] = m

    @classmethod
    def from_complex(cls, C):
        counts = Counter()
        for k, mod in enumerate(C.modules):
            if k == 0:
                continue
            for s in mod.shifts:
                counts[(k, s)] += 1
        return cls(counts)

    def index(self, k):
        return {d: m for (kk, d), m in self.entries.items() if kk == k}

    @property
    def alpha(self):
        return self.index(1)

    @property
    def beta(self):
        return self.index(2)

    @property
    def gamma(self):
        return self.index(3)

    def total(self, k):
        return sum(self.index(k).values())

    def transpose(self):
        return BettiTable({(k, d.transpose()): m for (k, d), m in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries

    def __bool__(self):
        return bool(self.entries)

    def lines(self):
        return [f"{k} ({d[0]},{d[1]}) {m}" for (k, d), m in sorted(self.entries.items())]

    def __str__(self):
        return "\n".join(self.lines())

    def __repr__(self):
        return f"BettiTable({self.entries!r})"


def betti(C):
    return BettiTable.from_complex(C)


# ---------------------------------------------------------------------------
# resolutions

def _is_unit_entry(f):
    return len(f.keys) == 1 and f.bidegree() == (0, 0)


def _pivot_out(C, k, u, v):
    """Cancel the unit entry (u, v) of d_k."""
    field = C.field
    D = C.maps[k - 1]
    a_inv = field.inv(D[u][v].coefs[0])
    col_v = [D[r][v] for r in range(len(D))]
    row_u = D[u]
    new = []
    for r in range(len(D)):
        if r == u:
            continue
        c_r = col_v[r]
        if c_r.is_zero():
            new.append([D[r][c] for c in range(len(row_u)) if c != v])
            continue
        scaled = c_r.scale(a_inv)
        new.append([D[r][c] - scaled * row_u[c] if row_u[c] else D[r][c]
                    for c in range(len(row_u)) if c != v])
    C.maps[k - 1] = new
    if k < len(C.maps):
        C.maps[k] = [row for idx, row in enumerate(C.maps[k]) if idx != v]
    if k >= 2:
        C.maps[k - 2] = [[f for idx, f in enumerate(row) if idx != u] for row in C.maps[k - 2]]
    src = list(C.modules[k].shifts)
    del src[v]
    tgt = list(C.modules[k - 1].shifts)
    del tgt[u]
    C.modules[k] = FreeBiModule(src)
    C.modules[k - 1] = FreeBiModule(tgt)


def minimalize(C):
    """Remove unit entries by cancelling trivial summand pairs, in place."""
    changed = True
    while changed:
        changed = False
        for k in range(1, C.length + 1):
            D = C.maps[k - 1]
            for u, row in enumerate(D):
                for v, f in enumerate(row):
                    if f and _is_unit_entry(f):
                        _pivot_out(C, k, u, v)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return C.drop_trailing_zeros()


def min_free_resolution(I):
    """Minimal bigraded free resolution of S/I."""
    field = I.field
    if I.is_unit():
        raise ValueError("unit ideal")
    if I.is_zero():
        return FreeComplex([FreeBiModule([(0, 0)])], [], field)
    return minimalize(schreyer_resolution(I))


def projective_dimension(C):
    return C.length


def depth(C):
    """4 - pd, by Auslander-Buchsbaum over the four-variable ring."""
    return 4 - C.length


def _entry_degree_ok(f, target, source):
    if f.is_zero():
        return True
    d = f.bidegree()
    return d is not None and BiDegree(*d) == BiDegree(source[0] - target[0], source[1] - target[1])


def _matmul(A, B, field):
    if not A or not B or not B[0]:
        return []
    n = len(B)
    out = []
    for row in A:
        new = []
        for c in range(len(B[0])):
            acc = _zero(field)
            for t in range(n):
                if row[t] and B[t][c]:
                    acc = acc + row[t] * B[t][c]
            new.append(acc)
        out.append(new)
    return out


def verify_complex(C):
    """All d∘d vanish and every nonzero entry has its forced bidegree."""
    for k in range(1, C.length + 1):
        D = C.differential(k)
        tgt = C.modules[k - 1].shifts
        src = C.modules[k].shifts
        for u, row in enumerate(D):
            for v, f in enumerate(row):
                if not _entry_degree_ok(f, tgt[u], src[v]):
                    return False
    for k in range(1, C.length):
        P = _matmul(C.differential(k), C.differential(k + 1), C.field)
        if any(f for row in P for f in row):
            return False
    return True


def _kernel(C, k):
    return syzygies_of_columns(C.field, C.modules[k].shifts, C.modules[k - 1].shifts,
                               C.columns(k))


def _image(C, k):
    """Image of d_{k+1} inside F_k (zero at the top of the complex)."""
    shifts = C.modules[k].shifts
    if k >= C.length:
        return Submodule(shifts, [], C.field)
    return Submodule(shifts, C.columns(k + 1), C.field)


def homology_B_torsion(C, k):
    """True iff H_k(C) is annihilated by a power of B."""
    if not 1 <= k <= C.length:
        raise ValueError(f"homological index {k} outside 1..{C.length}")
    K = _kernel(C, k)
    if K.is_zero():
        return True
    im = _image(C, k)
    if im.contains_module(K):
        return True
    return module_saturate_by_B(im).contains_module(K)


# ---------------------------------------------------------------------------
# JSON

def complex_to_json(C):
    return {"field": field_to_spec(C.field),
            "modules": [[[s[0], s[1]] for s in m.shifts] for m in C.modules],
            "maps": [[[str(f) for f in row] for row in M] for M in C.maps]}


def complex_from_json(doc):
    if not isinstance(doc, dict):
        raise ValueError("complex document: top level must be an object")
    try:
        field = field_from_spec(doc.get("field", "QQ"))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"complex document: field: {exc}") from None
    mods = doc.get("modules")
    maps = doc.get("maps")
    if not isinstance(mods, list) or not mods:
        raise ValueError("complex document: modules: expected a nonempty list")
    if not isinstance(maps, list):
        raise ValueError("complex document: maps: expected a list")
    modules = []
    for n, m in enumerate(mods):
        try:
            modules.append(FreeBiModule([BiDegree(int(a), int(b)) for a, b in m]))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"complex document: modules[{n}]: {exc}") from None
    mats = []
    for n, M in enumerate(maps):
        try:
            mats.append([[BiPoly.parse(str(f), field) for f in row] for row in M])
        except (TypeError, ValueError) as exc:
            raise ValueError(f"complex document: maps[{n}]: {exc}") from None
    try:
        return FreeComplex(modules, mats, field)
    except ValueError as exc:
        raise ValueError(f"complex document: maps: {exc}") from None


def load_complex(path):
    with open(path) as fh:
        return complex_from_json(json.load(fh))


def dump_complex(C, path=None, extra=None):
    doc = complex_to_json(C)
    if extra:
        doc.update(extra)
    text = json.dumps(doc, indent=1) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def _frames_to_complex(levels, field):
    conv = (lambda c: c) if field.modulus else (lambda c: Fraction(int(c)))
    gens = levels[0]
    shifts0 = []
    row = []
    for vec in gens:
        keys = sorted((m for _, m in vec), reverse=True)
        f = BiPoly._raw(field, keys, [conv(vec[(0, k)]) for k in keys])
        row.append(f)
        shifts0.append(BiDegree(*f.bidegree()))
    modules = [FreeBiModule([(0, 0)]), FreeBiModule(shifts0)]
    maps = [[row]]
    prev = shifts0
    for vecs in levels[1:]:
        if not vecs:
            break
        shifts = []
        cols = []
        for vec in vecs:
            comps = {}
            for (i, m), c in vec.items():
                comps.setdefault(i, []).append((m, c))
            i0, m0 = max(vec)  # any term fixes the degree
            d = key_bidegree(m0)
            shifts.append(BiDegree(prev[i0][0] + d[0], prev[i0][1] + d[1]))
            col = []
            for i in range(len(prev)):
                terms = sorted(comps.get(i, ()), reverse=True)
                col.append(BiPoly._raw(field, [m for m, _ in terms], [conv(c) for _, c in terms]))
            cols.append(col)
        modules.append(FreeBiModule(shifts))
        maps.append([[col[r] for col in cols] for r in range(len(prev))])
        prev = shifts
    return FreeComplex(modules, maps, field)


def schreyer_resolution(I):
    """Free (not necessarily minimal) resolution of S/I from Schreyer frames."""
    basis = [(k, c) for _, k, c in I.kernel_gb().basis]
    p = I.field.modulus
    return _frames_to_complex(resolve_frames(basis, p, _backend.for_modulus(p)), I.field)
