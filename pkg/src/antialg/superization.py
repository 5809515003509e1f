"""The Lie superalgebra g_a attached to an antialgebra a.

Even part: S^2 a_1 modulo ]alpha,a[ . b ~ a . ]alpha,b[ (alpha even).
Odd part: a_1. Brackets:

    [a.b, c.d] = Sym( ]a,]b,c[[ . d - ]c,]d,a[[ . b )
    [a.b, c]   = ]a,]b,c[[ + ]b,]a,c[[
    [a, b]     = class of a (x) b + b (x) a

Here a.b = a (x) b + b (x) a, the symmetric product, so [a,b] = a.b and
[a,a] = 2 a (x) a. Sym applies the swaps a<->b and c<->d (four terms) with
a weight; ``SuperizeConfig`` holds the weight and the calibration picks the
one that passes super-Jacobi on asl(2). ``odd_factor`` rescales [a,b] and
only exists so the calibration can show that Jacobi does not fix it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .graded import AlgebraTable, GradedVector, Label, Report, check_antialgebra, check_superalgebra
from .linalg import QuotientSpace, quotient


SYM_WEIGHTS = {"sum": Fraction(1), "average": Fraction(1, 4), "half-sum": Fraction(1, 2)}


@dataclass(frozen=True)
class SuperizeConfig:
    sym: str = "half-sum"  # a key of SYM_WEIGHTS
    odd_factor: Fraction = Fraction(1)


@dataclass
class SymSquareSpace:
    odd_basis: list
    generators: list  # (i, j) with i <= j, see product()
    relations: list  # rows over the generators
    quotient: QuotientSpace

    @property
    def dim(self):
        return self.quotient.dim

    def index(self, i, j):
        return self._pos[(min(i, j), max(i, j))]

    def __post_init__(self):
        self._pos = {g: k for k, g in enumerate(self.generators)}

    def product(self, u: GradedVector, v: GradedVector):
        """Coordinates of u.v = u (x) v + v (x) u over the generators.

        s(i,j) stands for a_i (x) a_j + a_j (x) a_i when i < j and for
        a_i (x) a_i on the diagonal, so a_i.a_i = 2 s(i,i).
        """
        row = [Fraction(0)] * len(self.generators)
        pos = {lab: k for k, lab in enumerate(self.odd_basis)}
        for x, a in u.terms.items():
            for y, b in v.terms.items():
                i, j = pos[x], pos[y]
                row[self.index(i, j)] += a * b * (2 if i == j else 1)
        return row

    def label(self, k):
        i, j = self.generators[self.quotient.free[k]]
        return Label("s:(%s,%s)" % (self.odd_basis[i], self.odd_basis[j]), None, False)


def sym_square(A: AlgebraTable) -> SymSquareSpace:
    od = list(A.odd_basis)
    gens = [(i, j) for i in range(len(od)) for j in range(i, len(od))]
    tmp = SymSquareSpace(od, gens, [], None)
    rows = []
    for alpha in A.even_basis:
        for a, b in itertools.product(od, od):
            left = tmp.product(A.mul(alpha, a), GradedVector.basis(b))
            right = tmp.product(GradedVector.basis(a), A.mul(alpha, b))
            r = [x - y for x, y in zip(left, right)]
            if any(r):
                rows.append(r)
    return SymSquareSpace(od, gens, rows, quotient(len(gens), rows))


class Superization:
    """g_a with brackets computed on representatives and projected."""

    def __init__(self, A: AlgebraTable, config: SuperizeConfig = SuperizeConfig()):
        if A.is_family:
            raise ValueError("superization needs a finite algebra")
        self.A = A
        self.config = config
        self.S = sym_square(A)
        self.even_labels = [self.S.label(k) for k in range(self.S.dim)]
        self.odd_labels = list(A.odd_basis)

    # raw brackets on generator coordinates (before projection)

    def _gen_vectors(self, k):
        i, j = self.S.generators[k]
        od = self.S.odd_basis
        return GradedVector.basis(od[i]), GradedVector.basis(od[j])

    def _pairs(self, row):
        """(coefficient, a, b) with the row equal to the sum of c * a.b."""
        for k, c in enumerate(row):
            if c:
                i, j = self.S.generators[k]
                a, b = self._gen_vectors(k)
                yield (c / 2 if i == j else c), a, b

    def even_even_raw(self, r1, r2):
        P = self.A.product
        out = [Fraction(0)] * len(self.S.generators)

        def E(a, b, c, d):
            u = self.S.product(P(a, P(b, c)), d)
            v = self.S.product(P(c, P(d, a)), b)
            return [x - y for x, y in zip(u, v)]

        w = SYM_WEIGHTS[self.config.sym]
        for c1, a, b in self._pairs(r1):
            for c2, c, d in self._pairs(r2):
                for (p, q), (s, t) in itertools.product(((a, b), (b, a)), ((c, d), (d, c))):
                    for k, x in enumerate(E(p, q, s, t)):
                        out[k] += w * c1 * c2 * x
        return out

    def even_odd_raw(self, r, c: GradedVector) -> GradedVector:
        P = self.A.product
        acc = GradedVector()
        for c1, a, b in self._pairs(r):
            acc = acc + (P(a, P(b, c)) + P(b, P(a, c))) * c1
        return acc

    def odd_odd_raw(self, a: GradedVector, b: GradedVector):
        return [self.config.odd_factor * x for x in self.S.product(a, b)]

    # projected brackets

    def _even_vec(self, coords):
        return GradedVector({self.even_labels[k]: c for k, c in enumerate(coords) if c})

    def _lift(self, v: GradedVector):
        pos = {lab: k for k, lab in enumerate(self.even_labels)}
        w = [Fraction(0)] * self.S.dim
        for lab, c in v.terms.items():
            w[pos[lab]] += c
        return self.S.quotient.lift(w)

    def bracket(self, u: Label, v: Label) -> GradedVector:
        if not u.odd and not v.odd:
            raw = self.even_even_raw(self._lift(GradedVector.basis(u)), self._lift(GradedVector.basis(v)))
            return self._even_vec(self.S.quotient.project(raw))
        if not u.odd and v.odd:
            return self.even_odd_raw(self._lift(GradedVector.basis(u)), GradedVector.basis(v))
        if u.odd and not v.odd:
            return self.even_odd_raw(self._lift(GradedVector.basis(v)), GradedVector.basis(u)) * -1
        return self._even_vec(self.S.quotient.project(self.odd_odd_raw(GradedVector.basis(u),
                                                                      GradedVector.basis(v))))

    def odd_square(self, a: GradedVector, b: GradedVector) -> GradedVector:
        """The class of a.b in the even part."""
        return self._even_vec(self.S.quotient.project(self.S.product(a, b)))

    def table(self) -> AlgebraTable:
        table = {}
        basis = self.even_labels + self.odd_labels
        for u, v in itertools.product(basis, basis):
            r = self.bracket(u, v)
            if r:
                table[u, v] = r
        return AlgebraTable("g(%s)" % self.A.name, "superalgebra", list(self.even_labels),
                            list(self.odd_labels), table)

    def well_definedness(self) -> Report:
        """Brackets of relation rows with every generator project to zero."""
        rep = Report("well-definedness for g(%s)" % self.A.name)
        n = len(self.S.generators)
        proj = self.S.quotient.project
        for ri, rel in enumerate(self.S.relations):
            for k in range(n):
                g = [Fraction(int(i == k)) for i in range(n)]
                for name, raw in (("[r,g]", self.even_even_raw(rel, g)), ("[g,r]", self.even_even_raw(g, rel))):
                    d = proj(raw)
                    rep.add(name, (str(ri), str(self.S.generators[k])),
                            GradedVector({self.even_labels[i]: c for i, c in enumerate(d) if c}))
            for c in self.S.odd_basis:
                rep.add("[r,c]", (str(ri), str(c)), self.even_odd_raw(rel, GradedVector.basis(c)))
        return rep


def superize(A: AlgebraTable, config: SuperizeConfig = SuperizeConfig()):
    """(superalgebra table, SymSquareSpace, well-definedness Report)."""
    if not check_antialgebra(A).ok:
        raise ValueError("%s is not an antialgebra" % A.name)
    G = Superization(A, config)
    return G.table(), G.S, G.well_definedness()


def calibrate_superization(A: AlgebraTable | None = None):
    """The configurations under which g(asl(2)) passes super-Jacobi, in trial order."""
    from .catalog import build_asl2
    A = A or build_asl2()
    winners = []
    for sym in SYM_WEIGHTS:
        for f in (Fraction(1), Fraction(2), Fraction(1, 2)):
            cfg = SuperizeConfig(sym, f)
            T, _, wd = superize(A, cfg)
            if check_superalgebra(T).ok and wd.ok:
                winners.append(cfg)
    return winners


def quotient_rank_oracle(A: AlgebraTable) -> int:
    """dim S^2 a_1 / relations, counted inside the full tensor square.

    Independent of sym_square: symmetric tensors are cut out of a_1 (x) a_1
    as the kernel of (1 - swap), relations are symmetrized there, and the
    dimension is rank(sym) - rank(relations).
    """
    from .linalg import RatMatrix, kernel_basis, rank
    od = list(A.odd_basis)
    n = len(od)
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    swap = {}
    for (i, j), k in idx.items():
        swap[k, k] = swap.get((k, k), 0) + 1
        swap[k, idx[j, i]] = swap.get((k, idx[j, i]), 0) - 1
    sym_dim = len(kernel_basis(RatMatrix(n * n, n * n, swap)))
    rels = []
    for alpha in A.even_basis:
        for a, b in itertools.product(range(n), range(n)):
            row = [Fraction(0)] * (n * n)
            for z, c in A.mul(alpha, od[a]).terms.items():
                k = od.index(z)
                row[idx[k, b]] += c
                row[idx[b, k]] += c
            for z, c in A.mul(alpha, od[b]).terms.items():
                k = od.index(z)
                row[idx[a, k]] -= c
                row[idx[k, a]] -= c
            rels.append(row)
    r = rank(RatMatrix.from_rows(rels, n * n)) if rels else 0
    return sym_dim - r


def compare_to_derivations(A: AlgebraTable, config: SuperizeConfig = SuperizeConfig()) -> Report:
    """Dimensions of g(A) and Der(A); for equal dimensions an isomorphism is searched."""
    from .derivations import derivation_algebra
    G, _, _ = superize(A, config)
    D, _ = derivation_algebra(A)
    rep = Report("g(%s) vs Der(%s)" % (A.name, A.name))
    rep.info["dims"] = {"superization": list(G.dims), "derivations": list(D.dims)}
    rep.info["isomorphism"] = None
    if G.dims == D.dims:
        iso = find_isomorphism(G, D)
        rep.info["isomorphism"] = None if iso is None else {str(k): v.to_json() for k, v in iso.items()}
    return rep


SEARCH_VALUES = (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2))


def find_isomorphism(G: AlgebraTable, H: AlgebraTable, values=SEARCH_VALUES):
    """A parity-preserving isomorphism G -> H, or None.

    Works when the even part of G is spanned by brackets of odd elements:
    the odd block T1 is searched over matrices with entries in ``values``,
    the even block is then forced by T0([a,b]) = [T1 a, T1 b] and solved
    linearly, and every bracket is verified.
    """
    from .linalg import RatMatrix, rank, solve
    if G.dims != H.dims:
        return None
    gv, go = G.even_basis, G.odd_basis
    hv, ho = H.even_basis, H.odd_basis
    pairs = [(a, b) for i, a in enumerate(go) for b in go[i:]]
    # rows: coefficients of [a,b]_G over gv, one block per H even label
    span = RatMatrix.from_rows([[G.mul(a, b)[x] for x in gv] for a, b in pairs], len(gv))
    if rank(span) < len(gv):
        return None
    for entries in itertools.product(values, repeat=len(go) * len(ho)):
        T1 = {a: GradedVector({ho[j]: entries[i * len(ho) + j] for j in range(len(ho))}) for i, a in enumerate(go)}
        M1 = RatMatrix.from_rows([[T1[a][h] for h in ho] for a in go], len(ho))
        if rank(M1) < len(go):
            continue
        T0 = {}
        ok = True
        for y in hv:
            rhs = [H.product(T1[a], T1[b])[y] for a, b in pairs]
            col = solve(span, rhs)
            if col is None:
                ok = False
                break
            for x, c in zip(gv, col):
                if c:
                    T0[x] = T0.get(x, GradedVector()) + GradedVector({y: c})
        if not ok:
            continue
        T = dict(T1)
        for x in gv:
            T[x] = T0.get(x, GradedVector())
        M0 = RatMatrix.from_rows([[T[x][y] for y in hv] for x in gv], len(hv))
        if rank(M0) < len(gv):
            continue

        def img(v):
            acc = GradedVector()
            for lab, c in v.terms.items():
                acc = acc + T[lab] * c
            return acc

        if all(img(G.mul(u, v)) == H.product(T[u], T[v]) for u in G.basis for v in G.basis):
            return T
    return None
