"""Cochains of an antialgebra with coefficients in a module, and the coboundary.

A (p,q)-cochain eats p even arguments (no symmetry) and q odd arguments
(alternating) and returns an element of the module B. Products between
algebra and module elements are taken in the semidirect product and
translated to the split map m, so every formula below is written with m.

Basis cochains are keyed by (xs, ys, out) with ys strictly increasing in the
algebra's basis order.

The coboundary is a sum of seven elementary terms, each with a coefficient
depending on (p, q) and on the parity of the values:

    (1,0)  a: m(x1, phi(x2..; y))
           b: sum_i (-1)^i phi(.., m(x_i, x_i+1), ..; y)
           c: sum_j (-1)^(p+j) phi(x1..xp; m(x_p+1, y_j), y minus y_j)
           d: (-1)^(p+1) m(phi(x1..xp; y), x_p+1)
    (0,1)  e: sum_j (-1)^(p+j) m(phi(x; y minus y_j), y_j)
           f: sum_j (-1)^(p+j) m(y_j, phi(x; y minus y_j))
    (-1,2) g: sum_{i<j} (-1)^(p+i+j+1) phi(x1..x_p-1, m(y_i, y_j); rest)

"printed" uses a=b=1, c=1/q, d=[q=0], e=C_k, f=0, g=1. It squares to
zero for trivial coefficients on asl(2) and ah(1), but not for the adjoint
module of asl(2) (already from degree 0 to 2), nor for trivial coefficients
once there are four odd basis vectors. "calibrated" keeps b, c, g and
replaces the module-action coefficients in total degree at most 3 by values
fixed by three requirements: delta^2 = 0, every module-extension and
abelian-extension cocycle is a cocycle, and delta of a 0-cochain b is the
cocycle a -> rho_a b of the split extension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .associator import bracket_to_m
from .catalog import ModuleSpec, semidirect, trivial_module
from .graded import (ZERO, AlgebraTable, GradedVector, Label, Report, Violation, check_antialgebra,
                     even, odd, sign)
from .linalg import RatMatrix, kernel_basis, rank, solve

HALF = Fraction(1, 2)

COMPONENT_OF = {"a": "10", "b": "10", "c": "10", "d": "10", "e": "01", "f": "01", "g": "-12"}
SHIFT = {"10": (1, 0), "01": (0, 1), "-12": (-1, 2)}

# (value parity, p, q) -> overrides of the printed coefficients
CALIBRATED = {
    ("V", 0, 0): {"a": 1, "d": 0, "e": -1},
    ("V", 0, 1): {"a": 2, "d": 0},
    ("V", 1, 0): {"d": 0, "e": 0},
    ("V", 1, 1): {"d": -1, "e": 0},
    ("V", 1, 2): {"d": -1},
    ("V", 2, 1): {"d": -1, "e": 0},
    ("W", 0, 0): {"e": 1},
    ("W", 0, 1): {"e": HALF},
    ("W", 2, 0): {"e": -1},
    ("W", 2, 1): {"e": 0},
    ("W", 3, 0): {"e": -1},
}
CALIBRATED_MAX_DEGREE = 3


def printed_coefficient(term, p, q, odd_values, variant=()):
    if term in ("a", "b", "g"):
        return Fraction(1)
    if term == "c":
        if q == 0:
            return Fraction(0)
        return Fraction(1) if "drop_1_over_q" in variant else Fraction(1, q)
    if term == "d":
        return Fraction(1) if q == 0 else Fraction(0)
    if term == "e":
        if odd_values:
            return Fraction(1, q + 1) if p != 0 else Fraction(2, q + 1)
        return Fraction(1)
    if term == "f":
        return Fraction(0)
    raise KeyError(term)


def check_module(M: ModuleSpec, window=None) -> Report:
    """A module is exactly a rho for which the semidirect product is an antialgebra."""
    E = semidirect(M.algebra, M)
    rep = check_antialgebra(E, window)
    rep.subject = "%s-module %s" % (M.algebra.name, M.name)
    return rep


@dataclass
class Cochain:
    p: int
    q: int
    coeffs: dict = field(default_factory=dict)  # (xs, ys, out) -> Fraction

    def parity(self):
        ps = {(self.q + out.parity) % 2 for (_, _, out), c in self.coeffs.items() if c}
        if len(ps) > 1:
            return "mixed"
        return None if not ps else ("odd" if ps.pop() else "even")

    def as_phi(self):
        phi = {}
        for (xs, ys, out), c in self.coeffs.items():
            if c:
                phi.setdefault((tuple(xs), tuple(ys)), {})[out] = Fraction(c)
        return phi


def _is_trivial(M: ModuleSpec):
    if M.is_family:
        return False
    return not any(v for v in M.rho.values())


class CochainComplex:
    """The complex C(A; M) with its coboundary.

    ``conventions`` is "calibrated" (default) or "printed". ``variant`` holds
    mutations used by regression tests: "drop_1_over_q" removes the 1/q
    weight in the c term. For family algebras ``window`` picks the
    represented labels; cochains vanish off them.
    """

    def __init__(self, M: ModuleSpec, window=None, conventions="calibrated", variant=()):
        if conventions not in ("calibrated", "printed"):
            raise ValueError("unknown conventions %r" % (conventions,))
        self.M = M
        self.conventions = conventions
        self.variant = frozenset(variant)
        A = M.algebra
        self.A = A if window is None else A.with_window(window)
        self.E = semidirect(A, M)
        self.m = bracket_to_m(self.E)
        self.X = list(self.A.even_basis)
        self.Y = list(self.A.odd_basis)
        if window is not None and M.window_labels is not None:
            ev, od = M.window_labels(window)
            self.B = list(ev) + list(od)
        else:
            self.B = list(M.basis)
        self.trivial = _is_trivial(M)
        self.order = {lab: k for k, lab in enumerate(self.Y)}
        self._xset = frozenset(self.X)
        self._bset = frozenset(self.B)
        self._basis_cache = {}
        self._matrix_cache = {}

    # coefficients

    def coefficient(self, term, p, q, odd_values):
        c = printed_coefficient(term, p, q, odd_values, self.variant)
        if self.conventions == "printed" or self.trivial or term in "bcg":
            return c
        if p + q > CALIBRATED_MAX_DEGREE:
            raise ValueError("calibrated coboundary is fixed up to total degree %d; got (%d,%d)"
                             % (CALIBRATED_MAX_DEGREE, p, q))
        over = CALIBRATED.get(("W" if odd_values else "V", p, q), {})
        return Fraction(over.get(term, c))

    # bases

    def basis(self, p, q):
        key = (p, q)
        if key not in self._basis_cache:
            self._basis_cache[key] = [(xs, ys, b) for xs, ys in self.arguments(p, q) for b in self.B]
        return self._basis_cache[key]

    def dim(self, p, q):
        return len(self.X) ** p * comb(len(self.Y), q) * len(self.B)

    def total_basis(self, k):
        out = []
        for p in range(k + 1):
            out.extend((p, k - p, key) for key in self.basis(p, k - p))
        return out

    def arguments(self, p, q):
        return [(xs, ys) for xs in itertools.product(self.X, repeat=p)
                for ys in itertools.combinations(self.Y, q)]

    # evaluation of a cochain on (vector) arguments

    def _sort_odd(self, ys):
        """Sort labels into basis order; returns (sign, tuple), or (0, None) on a repeat."""
        arr = [self.order[y] for y in ys]
        if len(set(arr)) != len(arr):
            return 0, None
        s = 1
        for i in range(len(arr)):
            for j in range(len(arr) - 1 - i):
                if arr[j] > arr[j + 1]:
                    arr[j], arr[j + 1] = arr[j + 1], arr[j]
                    s = -s
        return s, tuple(self.Y[k] for k in arr)

    def evaluate(self, phi, xs, ys) -> GradedVector:
        """phi(xs; ys) with arguments given as Labels or GradedVectors.

        ``phi`` is a dict {(xs, ys): {out: coeff}} on represented labels, or a
        callable (xs, ys) -> GradedVector on basis labels.
        """
        xs = [GradedVector.basis(x) if isinstance(x, Label) else x for x in xs]
        ys = [GradedVector.basis(y) if isinstance(y, Label) else y for y in ys]
        acc = {}
        for xt in itertools.product(*[list(v.terms.items()) for v in xs]):
            cx = Fraction(1)
            for _, c in xt:
                cx *= c
            xl = tuple(lab for lab, _ in xt)
            for yt in itertools.product(*[list(v.terms.items()) for v in ys]):
                c = cx
                for _, cy in yt:
                    c *= cy
                yl = [lab for lab, _ in yt]
                if callable(phi):
                    if len(set(yl)) != len(yl):
                        continue
                    for out, val in phi(xl, tuple(yl)).terms.items():
                        acc[out] = acc.get(out, 0) + c * val
                    continue
                if any(lab not in self.order for lab in yl) or any(lab not in self._xset for lab in xl):
                    continue
                s, ys_sorted = self._sort_odd(yl)
                if not s:
                    continue
                for out, val in phi.get((xl, ys_sorted), {}).items():
                    acc[out] = acc.get(out, 0) + s * c * val
        return GradedVector(acc)

    # elementary terms

    def term(self, t, phi, p, q, xs, ys) -> GradedVector:
        m, ev = self.m, self.evaluate
        acc = GradedVector()
        if t == "a":
            return m(xs[0], ev(phi, xs[1:], ys))
        if t == "b":
            for i in range(1, p + 1):
                merged = xs[: i - 1] + (m(xs[i - 1], xs[i]),) + xs[i + 1:]
                acc = acc + ev(phi, merged, ys) * sign(i)
            return acc
        if t == "c":
            for j in range(1, q + 1):
                rest = ys[: j - 1] + ys[j:]
                acc = acc + ev(phi, xs[:p], (m(xs[p], ys[j - 1]),) + rest) * sign(p + j)
            return acc
        if t == "d":
            return m(ev(phi, xs[:p], ys), xs[p]) * sign(p + 1)
        if t in "ef":
            for j in range(1, q + 2):
                val = ev(phi, xs, ys[: j - 1] + ys[j:])
                prod = m(val, ys[j - 1]) if t == "e" else m(ys[j - 1], val)
                acc = acc + prod * sign(p + j)
            return acc
        if t == "g":
            n = q + 2
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    rest = tuple(y for k, y in enumerate(ys, 1) if k not in (i, j))
                    acc = acc + ev(phi, xs + (m(ys[i - 1], ys[j - 1]),), rest) * sign(p + i + j + 1)
            return acc
        raise KeyError(t)

    def component(self, comp, phi, p, q, xs, ys) -> GradedVector:
        """One component of delta applied to phi in C^{p,q}, evaluated at (xs; ys)."""
        acc = GradedVector()
        for odd_values, part in _split_by_parity(phi):
            for t, c in COMPONENT_OF.items():
                if c != comp or (t == "b" and p == 0):
                    continue
                w = self.coefficient(t, p, q, odd_values)
                if w:
                    acc = acc + self.term(t, part, p, q, xs, ys) * w
        return acc

    def d10(self, phi, p, q, xs, ys):
        return self.component("10", phi, p, q, xs, ys)

    def d01(self, phi, p, q, xs, ys):
        return self.component("01", phi, p, q, xs, ys)

    def dm12(self, phi, p, q, xs, ys):
        return self.component("-12", phi, p, q, xs, ys)

    def coboundary(self, cochains: dict) -> dict:
        """delta of a cochain given blockwise as {(p, q): phi}; returns {(p, q): phi}."""
        out = {}
        for (p, q), phi in cochains.items():
            for comp, (di, dj) in SHIFT.items():
                if p + di < 0:
                    continue
                tgt = out.setdefault((p + di, q + dj), {})
                for xs, ys in self.arguments(p + di, q + dj):
                    val = self.component(comp, phi, p, q, xs, ys)
                    if val:
                        slot = tgt.setdefault((xs, ys), {})
                        for lab, c in val.terms.items():
                            slot[lab] = slot.get(lab, 0) + c
        return {k: _clean(v) for k, v in out.items()}

    # matrices

    def component_matrix(self, comp, p, q, rows=None):
        """(matrix, source basis, target basis) of one component on C^{p,q}.

        ``rows`` optionally restricts the target argument tuples; the target
        basis then only lists keys over those arguments.
        """
        ckey = (comp, p, q, None if rows is None else tuple(rows))
        if ckey in self._matrix_cache:
            return self._matrix_cache[ckey]
        di, dj = SHIFT[comp]
        src = self.basis(p, q)
        if p + di < 0:
            return RatMatrix(0, len(src)), src, []
        args = self.arguments(p + di, q + dj) if rows is None else list(rows)
        tgt = [(xs, ys, b) for xs, ys in args for b in self.B]
        row_of = {key: r for r, key in enumerate(tgt)}
        entries = {}
        for col, (xs0, ys0, out0) in enumerate(src):
            phi = {(xs0, ys0): {out0: Fraction(1)}}
            for xs, ys in args:
                val = self.component(comp, phi, p, q, xs, ys)
                for out, c in val.terms.items():
                    r = row_of.get((xs, ys, out))
                    if r is None:
                        if out in self._bset:
                            raise AssertionError("target key missing: %r" % ((xs, ys, out),))
                        continue  # value off the window of B
                    entries[r, col] = c
        res = (RatMatrix(len(tgt), len(src), entries), src, tgt)
        self._matrix_cache[ckey] = res
        return res

    def delta(self, k, components=("10", "01", "-12")):
        """Matrix of delta^k : C^k -> C^{k+1} in the total bases."""
        src = self.total_basis(k)
        tgt = self.total_basis(k + 1)
        col_of = {(p, key): c for c, (p, _, key) in enumerate(src)}
        row_of = {(p, key): r for r, (p, _, key) in enumerate(tgt)}
        entries = {}
        for p in range(k + 1):
            q = k - p
            for comp in components:
                di, _ = SHIFT[comp]
                if p + di < 0:
                    continue
                mat, s, t = self.component_matrix(comp, p, q)
                for (r, c), v in mat.entries.items():
                    R = row_of[(p + di, t[r])]
                    C = col_of[(p, s[c])]
                    entries[R, C] = entries.get((R, C), 0) + v
        return RatMatrix(len(tgt), len(src), entries)

    def cochain_parity(self, entry):
        p, q, (xs, ys, out) = entry
        return (q + out.parity) % 2


def _split_by_parity(phi):
    if callable(phi):
        def part(odd_values):
            return lambda xs, ys: GradedVector({k: v for k, v in phi(xs, ys).terms.items()
                                                if k.odd == odd_values})
        return [(False, part(False)), (True, part(True))]
    parts = {}
    for key, vals in phi.items():
        for out, c in vals.items():
            if c:
                parts.setdefault(out.odd, {}).setdefault(key, {})[out] = c
    return sorted(parts.items(), key=lambda t: t[0])


def _clean(phi):
    out = {}
    for key, vals in phi.items():
        vals = {k: v for k, v in vals.items() if v}
        if vals:
            out[key] = vals
    return out


def _args_key(t):
    xs, ys = t
    return ([l.sort_key() for l in xs], [l.sort_key() for l in ys])


def _fmt(e):
    p, q, (xs, ys, out) = e
    return "(%d,%d):%s;%s->%s" % (p, q, ",".join(map(str, xs)), ",".join(map(str, ys)), out)


def verify_d2(M: ModuleSpec, k_max=3, window=None, conventions="calibrated", variant=()) -> Report:
    """delta^{k+1} delta^k = 0 for k < k_max.

    Finite algebras are checked on the full basis; family algebras on
    window-supported cochains at window arguments (see _windowed_composites).
    """
    rep = Report("%s; %s" % (M.algebra.name, M.name), window)
    rep.info["conventions"] = conventions
    comps = tuple(SHIFT)
    for k in range(k_max):
        name = "d2:%d" % k
        rep.count(name)
        if M.algebra.is_family:
            it = _windowed_composites(M, comps, comps, k, window or 1, conventions, variant)
        else:
            it = _finite_composites(CochainComplex(M, None, conventions, variant), comps, comps, k)
        _collect(rep, name, it, lambda c1, c2: True)
    return rep


def _collect(rep, name, composites, keep):
    acc = {}
    for (p, q, c1, c2), comp, src, tgt in composites:
        if not keep(c1, c2):
            continue
        dp = SHIFT[c1][0] + SHIFT[c2][0]
        dq = SHIFT[c1][1] + SHIFT[c2][1]
        for (r, c), v in comp.entries.items():
            key = ((p, q, src[c]), (p + dp, q + dq, tgt[r]))
            acc[key] = acc.get(key, 0) + v
    for (s, t), v in sorted(acc.items(), key=lambda kv: (_fmt(kv[0][0]), _fmt(kv[0][1]))):
        if v:
            rep.violations.append(Violation(name, (_fmt(s), _fmt(t)), str(v)))


_COMPLEXES = {}


def _complex(M, window, conventions, variant):
    key = (id(M), window, conventions, tuple(sorted(variant)))
    if key not in _COMPLEXES:
        _COMPLEXES[key] = (M, CochainComplex(M, window, conventions, variant))
    return _COMPLEXES[key][1]


def _finite_composites(C, first, second, k):
    for p in range(k + 1):
        q = k - p
        for c1 in first:
            p1, q1 = p + SHIFT[c1][0], q + SHIFT[c1][1]
            if p1 < 0:
                continue
            M1, src, mid = C.component_matrix(c1, p, q)
            for c2 in second:
                if p1 + SHIFT[c2][0] < 0:
                    continue
                M2, mid2, tgt = C.component_matrix(c2, p1, q1)
                yield (p, q, c1, c2), M2 @ M1, src, tgt


def _windowed_composites(M, first, second, k, window, conventions, variant):
    """second . first for a family algebra, asserted at window arguments.

    Every product of window labels stays within twice the window, so the
    middle basis is taken on the doubled window and the source basis on the
    tripled one; each reported entry is then exact.
    """
    w = Fraction(window)
    inner = _complex(M, w, conventions, variant)
    mid = _complex(M, 2 * w, conventions, variant)
    outer = _complex(M, 3 * w, conventions, variant)
    for p in range(k + 1):
        q = k - p
        for c1 in first:
            p1, q1 = p + SHIFT[c1][0], q + SHIFT[c1][1]
            if p1 < 0:
                continue
            for c2 in second:
                p2, q2 = p1 + SHIFT[c2][0], q1 + SHIFT[c2][1]
                if p2 < 0:
                    continue
                M2, mid_src, tgt = mid.component_matrix(c2, p1, q1, rows=inner.arguments(p2, q2))
                M1, src, mid_tgt = outer.component_matrix(c1, p, q, rows=mid.arguments(p1, q1))
                pos = {key: i for i, key in enumerate(mid_src)}
                remap = {i: pos[key] for i, key in enumerate(mid_tgt) if key in pos}
                M1r = RatMatrix(len(mid_src), M1.cols,
                                {(remap[r], c): v for (r, c), v in M1.entries.items() if r in remap})
                yield (p, q, c1, c2), M2 @ M1r, src, tgt


BICOMPLEX_RELATIONS = {
    "d10^2": (("10",), ("10",)),
    "d-12^2": (("-12",), ("-12",)),
    "d10.d-12+d-12.d10": (("10", "-12"), ("10", "-12")),
}


def bicomplex_check(A: AlgebraTable, k_max=3, window=None, conventions="printed") -> Report:
    """Trivial coefficients: d01 = 0 and the three bicomplex identities."""
    M = trivial_module(A)
    rep = Report("%s; trivial" % A.name, window)
    if A.is_family:
        C = _complex(M, Fraction(window or 1), conventions, ())
    else:
        C = CochainComplex(M, None, conventions)
    for k in range(k_max + 1):
        for p in range(k + 1):
            rep.count("d01=0")
            mat, src, tgt = C.component_matrix("01", p, k - p)
            for (r, c), v in sorted(mat.entries.items()):
                rep.violations.append(Violation("d01=0", (_fmt((p, k - p, src[c])), _fmt((p, k - p + 1, tgt[r]))),
                                                str(v)))
    for name, (first, second) in BICOMPLEX_RELATIONS.items():
        mixed = name.startswith("d10.")
        for k in range(k_max):
            rep.count(name)
            if A.is_family:
                it = _windowed_composites(M, first, second, k, window or 1, conventions, ())
            else:
                it = _finite_composites(C, first, second, k)
            _collect(rep, name, it, (lambda c1, c2: c1 != c2) if mixed else (lambda c1, c2: True))
    return rep


# cohomology dimensions

def _restrict(Mat, rows, cols):
    rpos = {r: i for i, r in enumerate(rows)}
    cpos = {c: j for j, c in enumerate(cols)}
    return RatMatrix(len(rows), len(cols), {(rpos[r], cpos[c]): v for (r, c), v in Mat.entries.items()
                                           if r in rpos and c in cpos})


def parity_violations(C: CochainComplex, k_max):
    """Entries of delta joining cochains of different parity (should be none)."""
    out = []
    for k in range(k_max + 1):
        D = C.delta(k)
        src, tgt = C.total_basis(k), C.total_basis(k + 1)
        for (r, c), v in sorted(D.entries.items()):
            if C.cochain_parity(src[c]) != C.cochain_parity(tgt[r]):
                out.append((_fmt(src[c]), _fmt(tgt[r]), v))
    return out


def cohomology_dims(M: ModuleSpec, k, conventions="calibrated"):
    """(even, odd) dimensions of H^k, from ranks on each parity sector.

    H^k is taken as ker delta / (im delta ∩ ker delta). When delta^2 = 0 this
    is the usual quotient; otherwise it is still a genuine dimension.
    """
    if M.algebra.is_family:
        raise ValueError("cohomology dimensions need a finite algebra")
    C = CochainComplex(M, None, conventions)
    bad = parity_violations(C, k)
    if bad:
        raise AssertionError("coboundary mixes cochain parities: %s" % (bad[0],))
    D = C.delta(k)
    Dprev = C.delta(k - 1) if k > 0 else None
    out = []
    for parity in (0, 1):
        src = [i for i, e in enumerate(C.total_basis(k)) if C.cochain_parity(e) == parity]
        tgt = [i for i, e in enumerate(C.total_basis(k + 1)) if C.cochain_parity(e) == parity]
        z = len(src) - rank(_restrict(D, tgt, src))
        b = 0
        if Dprev is not None:
            prev = [i for i, e in enumerate(C.total_basis(k - 1)) if C.cochain_parity(e) == parity]
            P = _restrict(Dprev, src, prev)
            # dim(im P ∩ ker D) = rank P - rank(D P)
            b = rank(P) - rank(_restrict(D, tgt, src) @ P)
        out.append(z - b)
    return tuple(out)


def cochain_dim(n_even, n_odd, dim_b, p, q):
    """dim C^{p,q} = n_even^p * C(n_odd, q) * dim B."""
    return n_even ** p * comb(n_odd, q) * dim_b


# extensions

def _gv(v):
    return v if isinstance(v, GradedVector) else GradedVector(v)


def extension_cochain(C: CochainComplex, c: dict, u_odd=False) -> dict:
    """The 1-cochain attached to rho~_a u = c(a), read through m.

    m(x, u) = 1/2 c(x) for an even u and c(x) for an odd one; odd arguments
    carry c(y) itself.
    """
    out = {}
    for a, v in c.items():
        v = _gv(v)
        if not v:
            continue
        if a.odd:
            out.setdefault((0, 1), {})[((), (a,))] = dict(v.terms)
        else:
            w = v * (1 if u_odd else HALF)
            out.setdefault((1, 0), {})[((a,), ())] = dict(w.terms)
    return out


def extend_module(M: ModuleSpec, c: dict, u_odd=False, name=None) -> ModuleSpec:
    """B + K u with rho~_a(b + l u) = rho_a b + l c(a)."""
    u = odd("u") if u_odd else even("u")
    if u in set(M.basis):
        raise ValueError("module already has a label u")
    rho = dict(M.rho)
    for a, v in c.items():
        v = _gv(v)
        for z in v.terms:
            if z.parity != (a.parity + u.parity) % 2:
                raise ValueError("c(%s) has the wrong parity for this extension" % a)
        if v:
            rho[a, u] = v
    ev = list(M.even_basis) + ([] if u_odd else [u])
    od = list(M.odd_basis) + ([u] if u_odd else [])
    return ModuleSpec(M.algebra, name or M.name + "+u", ev, od, rho)


def _axiom_defects(E: AlgebraTable):
    P = E.product
    V, W = E.even_basis, E.odd_basis
    out = []
    for x1, x2, x3 in itertools.product(V, V, V):
        out.append(P(x1, P(x2, x3)) - P(P(x1, x2), x3))
    for x1, x2, y in itertools.product(V, V, W):
        out.append(P(x1, P(x2, y)) - P(P(x1, x2), y) * HALF)
    for x, y1, y2 in itertools.product(V, W, W):
        out.append(P(x, P(y1, y2)) - P(P(x, y1), y2) - P(y1, P(x, y2)))
    for y1, y2, y3 in itertools.product(W, W, W):
        out.append(P(y1, P(y2, y3)) + P(y2, P(y3, y1)) + P(y3, P(y1, y2)))
    return out


def _axiom_kernel(n, build):
    """Slot vectors v with build(v) an antialgebra, assuming the defects are affine in v."""
    base = _axiom_defects(build([0] * n))
    if any(base):
        raise ValueError("the undeformed structure already violates the axioms")
    vecs = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        vecs.append(_axiom_defects(build(e)))
    labels = sorted({l for vs in vecs for v in vs for l in v.terms}, key=lambda l: l.sort_key())
    if not labels:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    cols = [[v[l] for v in vs for l in labels] for vs in vecs]
    return kernel_basis(RatMatrix.from_columns(cols, len(cols[0])))


def _slots_to_map(slots, vec):
    out = {}
    for (key, b), x in zip(slots, vec):
        if x:
            out[key] = out.get(key, ZERO) + GradedVector({b: x})
    return out


def module_extension_cocycles(M: ModuleSpec, u_odd=False):
    """Basis of {c : extend_module(M, c, u_odd) is a module}."""
    A = M.algebra
    slots = [(a, b) for a in A.basis for b in M.basis if b.parity == (a.parity + int(u_odd)) % 2]

    def build(vec):
        return semidirect(A, extend_module(M, _slots_to_map(slots, vec), u_odd))

    return [_slots_to_map(slots, v) for v in _axiom_kernel(len(slots), build)]


def module_intertwiner(M: ModuleSpec, c: dict, u_odd=False):
    """t in B of the parity of u with c(a) = rho_a t for all a, or None.

    u -> u - t then identifies the extension with B + (trivial line).
    """
    A = M.algebra
    cand = [b for b in M.basis if b.parity == int(u_odd)]
    targets = sorted({z for a in A.basis for b in cand for z in M.act(a, b).terms}
                     | {z for v in c.values() for z in _gv(v).terms}, key=lambda l: l.sort_key())
    rows, rhs = [], []
    for a in A.basis:
        ca = _gv(c.get(a, ZERO))
        for z in targets:
            rows.append([M.act(a, b)[z] for b in cand])
            rhs.append(ca[z])
    if not cand:
        return GradedVector() if not any(rhs) else None
    x = solve(RatMatrix.from_rows(rows, len(cand)), rhs)
    if x is None:
        return None
    return GradedVector({b: v for b, v in zip(cand, x) if v})


def extension_algebra(A: AlgebraTable, omega: dict, B: ModuleSpec | None = None) -> AlgebraTable:
    """A + B with ](a,b),(a',b')[ = (]a,a'[, rho_a b' +- rho_a' b + omega(a,a')).

    ``omega`` gives values on pairs; the reversed pair is filled in by the
    symmetry of the product (skew on two odd labels, symmetric otherwise).
    B defaults to a trivial line.
    """
    B = B or trivial_module(A)
    E0 = semidirect(A, B)
    table = {}
    for u in E0.basis:
        for v in E0.basis:
            r = E0.mul(u, v)
            if r:
                table[u, v] = r
    for (s, t), w in omega.items():
        w = _gv(w)
        table[s, t] = table.get((s, t), ZERO) + w
        if s != t:
            table[t, s] = table.get((t, s), ZERO) + w * sign(s.parity * t.parity)
    return AlgebraTable("%s+omega" % A.name, "antialgebra", list(E0.even_basis), list(E0.odd_basis), table)


def algebra_extension_cocycles(A: AlgebraTable, B: ModuleSpec | None = None):
    """Basis of the even omega (one entry per unordered pair) for which extension_algebra is an antialgebra."""
    B = B or trivial_module(A)
    slots = []
    for i, s in enumerate(A.basis):
        for t in A.basis[i:]:
            if s.odd and s == t:
                continue
            for b in B.basis:
                if b.parity == (s.parity + t.parity) % 2:
                    slots.append(((s, t), b))

    def build(vec):
        return extension_algebra(A, _slots_to_map(slots, vec), B)

    return [_slots_to_map(slots, v) for v in _axiom_kernel(len(slots), build)]


def omega_cochain(C: CochainComplex, omega: dict) -> dict:
    """The 2-cochain of omega through m: 1/2 omega on even pairs, omega otherwise."""
    out = {}

    def put(block, key, w, c=1):
        slot = out.setdefault(block, {}).setdefault(key, {})
        for z, v in w.terms.items():
            slot[z] = slot.get(z, 0) + c * v

    for (s, t), w in omega.items():
        w = _gv(w)
        if not s.odd and not t.odd:
            put((2, 0), ((s, t), ()), w, HALF)
            if s != t:
                put((2, 0), ((t, s), ()), w, HALF)
        elif s.odd and t.odd:
            sg, ys = C._sort_odd([s, t])
            put((0, 2), ((), ys), w, sg)
        else:
            x, y = (t, s) if s.odd else (s, t)
            put((1, 1), ((x,), (y,)), w)
    return {k: _clean(v) for k, v in out.items()}


def is_cocycle(C: CochainComplex, cochains: dict) -> bool:
    return all(not v for v in C.coboundary(cochains).values())


# the cocycle gamma on AK(1) with values in the coadjoint module

def gamma_value(lab: Label) -> GradedVector:
    """gamma(e_n) = -n e*_{-n}, gamma(l_i) = (i^2 - 1/4) l*_{-i}."""
    if lab.family == "e":
        return GradedVector({Label("e*", -lab.index, False): -lab.index})
    if lab.family == "l":
        return GradedVector({Label("l*", -lab.index, True): lab.index * lab.index - Fraction(1, 4)})
    raise KeyError(lab)


def gamma_cocycle(window=4, conventions="printed", sign=1, even_scale=1, odd_scale=1):
    """delta(gamma) at all window arguments, plus the triviality certificate.

    gamma is used as the 1-cochain phi(a) = gamma(a) on both parities;
    ``sign`` flips the dual pairing and the two scales allow other readings.
    gamma is a rule on all labels, so every reported value is exact.
    """
    from .catalog import build_AK1, coadjoint_module

    A = build_AK1(window)
    M = coadjoint_module(A)
    C = CochainComplex(M, window, conventions)
    xs_scale = Fraction(even_scale) * sign
    ys_scale = Fraction(odd_scale) * sign

    def on_x(xs, ys):
        return gamma_value(xs[0]) * xs_scale

    def on_y(xs, ys):
        return gamma_value(ys[0]) * ys_scale

    blocks = {(1, 0): on_x, (0, 1): on_y}
    defects, checked = [], 0
    for (p, q) in ((2, 0), (1, 1), (0, 2)):
        for xs, ys in C.arguments(p, q):
            acc = GradedVector()
            for (p0, q0), phi in blocks.items():
                for comp, (di, dj) in SHIFT.items():
                    if (p0 + di, q0 + dj) == (p, q):
                        acc = acc + C.component(comp, phi, p0, q0, xs, ys)
            checked += 1
            if acc:
                defects.append(((p, q), tuple(map(str, xs)), tuple(map(str, ys)), acc))
    cert = triviality_certificate(C, blocks)
    return {"window": window, "checked": checked, "defects": defects, "certificate": cert,
            "conventions": conventions, "sign": sign}


def triviality_certificate(C: CochainComplex, blocks: dict):
    """Look for a 0-cochain c on the window labels of B with delta c = the given 1-cochain.

    The equations are imposed at every window argument. Returns the sizes,
    solvability and, if solvable, the solution.
    """
    src = C.basis(0, 0)
    rows, rhs = {}, {}
    for (p, q), phi in blocks.items():
        comp = "10" if p == 1 else "01"
        mat, s, tgt = C.component_matrix(comp, 0, 0)
        for (r, c), v in mat.entries.items():
            rows.setdefault(tgt[r], {})[c] = v
        for xs, ys in C.arguments(p, q):
            for z, v in phi(xs, ys).terms.items():
                if z in C._bset:
                    rhs[(xs, ys, z)] = v
    keys = sorted(set(rows) | set(rhs), key=lambda k: (_args_key(k[:2]), k[2].sort_key()))
    mat = RatMatrix(len(keys), len(src),
                    {(i, c): v for i, k in enumerate(keys) for c, v in rows.get(k, {}).items()})
    x = solve(mat, [rhs.get(k, 0) for k in keys])
    return {"unknowns": len(src), "equations": len(keys), "solvable": x is not None,
            "solution": None if x is None else {str(s[2]): str(v) for s, v in zip(src, x) if v}}
