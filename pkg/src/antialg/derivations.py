"""Super-derivations of antialgebras.

D is a derivation when D]x,y[ = ]Dx,y[ + s (-1)^{p(D)p(x)} ]x,Dy[ on all basis
pairs, with s = +1 by default (``odd_sign`` lets the calibration harness try
s = -1 for odd D).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .catalog import build_AK1, build_K1, build_osp12
from .graded import AlgebraTable, GradedVector, Label, Report, check_superalgebra, sign
from .linalg import RatMatrix, kernel_basis, rank, solve


@dataclass
class LinearOperator:
    """A parity-homogeneous operator given on basis labels.

    ``images`` maps labels to GradedVectors (absent = 0); ``rule`` is used
    instead for family algebras.
    """

    name: str
    parity: int
    images: dict = field(default_factory=dict)
    rule: Callable | None = None

    def on_label(self, lab: Label) -> GradedVector:
        if self.rule is not None:
            return self.rule(lab)
        return self.images.get(lab, GradedVector())

    def __call__(self, v) -> GradedVector:
        if isinstance(v, Label):
            return self.on_label(v)
        acc = GradedVector()
        for lab, c in v.terms.items():
            acc = acc + self.on_label(lab) * c
        return acc

    def parity_violations(self, labels):
        bad = []
        for lab in labels:
            for z in self.on_label(lab).terms:
                if z.parity != (lab.parity + self.parity) % 2:
                    bad.append((lab, z))
        return bad

    def matrix(self, basis):
        """Columns are images of ``basis`` in the same ordered basis."""
        pos = {lab: i for i, lab in enumerate(basis)}
        ent = {}
        for j, lab in enumerate(basis):
            for z, c in self.on_label(lab).terms.items():
                ent[pos[z], j] = c
        return RatMatrix(len(basis), len(basis), ent)


def compose(D1: LinearOperator, D2: LinearOperator, name=None) -> LinearOperator:
    return LinearOperator(name or "%s.%s" % (D1.name, D2.name), (D1.parity + D2.parity) % 2,
                          rule=lambda lab: D1(D2.on_label(lab)))


def supercommutator(D1: LinearOperator, D2: LinearOperator) -> LinearOperator:
    s = sign(D1.parity * D2.parity)
    return LinearOperator("[%s,%s]" % (D1.name, D2.name), (D1.parity + D2.parity) % 2,
                          rule=lambda lab: D1(D2.on_label(lab)) - D2(D1.on_label(lab)) * s)


def derivation_defect(D: LinearOperator, A: AlgebraTable, window=None, odd_sign=1) -> Report:
    if window is not None:
        A = A.with_window(window)
    rep = Report("%s on %s" % (D.name, A.name), A.window)
    bad = D.parity_violations(A.basis)
    if bad:
        raise ValueError("%s is not parity-homogeneous: %s" % (D.name, bad[:3]))
    P = A.product
    for x, y in itertools.product(A.basis, A.basis):
        s = sign(D.parity * x.parity) * (odd_sign if D.parity else 1)
        rep.add("leibniz", (x, y), D(A.mul(x, y)) - P(D(x), y) - P(x, D(y)) * s)
    return rep


def ad(A: AlgebraTable, a: Label) -> LinearOperator:
    return LinearOperator("ad_%s" % a, a.parity, rule=lambda lab: A.mul(a, lab))


def _solve_derivations(A: AlgebraTable, parity, odd_sign=1):
    """Kernel of the Leibniz equations for operators of the given parity."""
    basis = A.basis
    slots = [(src, tgt) for src in basis for tgt in basis if tgt.parity == (src.parity + parity) % 2]
    eqs = {}
    for x, y in itertools.product(basis, basis):
        s = sign(parity * x.parity) * (odd_sign if parity else 1)
        for k, (src, tgt) in enumerate(slots):
            # contribution of D(src) = tgt to the defect at (x, y)
            v = GradedVector()
            xy = A.mul(x, y)
            if xy[src]:
                v = v + GradedVector({tgt: xy[src]})
            if x == src:
                v = v - A.mul(tgt, y)
            if y == src:
                v = v - A.mul(x, tgt) * s
            for z, c in v.terms.items():
                eqs.setdefault((x, y, z), {})[k] = c
    keys = sorted(eqs, key=lambda t: (t[0].sort_key(), t[1].sort_key(), t[2].sort_key()))
    M = RatMatrix(len(keys), len(slots), {(i, k): c for i, key in enumerate(keys) for k, c in eqs[key].items()})
    ops = []
    for v in kernel_basis(M):
        images = {}
        for (src, tgt), c in zip(slots, v):
            if c:
                images[src] = images.get(src, GradedVector()) + GradedVector({tgt: c})
        ops.append(images)
    return ops


def _coords(ops, basis, D):
    """Coordinates of D in the span of ``ops`` (all on ``basis``), or None."""
    cols = []
    for op in ops:
        cols.append([op.on_label(b)[z] for b in basis for z in basis])
    target = [D.on_label(b)[z] for b in basis for z in basis]
    if not cols:
        return [] if not any(target) else None
    return solve(RatMatrix.from_columns(cols, len(target)), target)


def derivation_algebra(A: AlgebraTable, odd_sign=1):
    """Der(A) as a superalgebra table on labels D:k, plus its operator basis."""
    if A.is_family:
        raise ValueError("derivation_algebra needs a finite algebra")
    ops = []
    for parity in (0, 1):
        for k, images in enumerate(_solve_derivations(A, parity, odd_sign)):
            ops.append(LinearOperator("D%d" % len(ops), parity, images))
    labels = [Label("D", Fraction(i), bool(op.parity)) for i, op in enumerate(ops)]
    table = {}
    for (i, D1), (j, D2) in itertools.product(enumerate(ops), enumerate(ops)):
        c = _coords(ops, A.basis, supercommutator(D1, D2))
        if c is None:
            raise AssertionError("Der(%s) is not closed: [%s,%s]" % (A.name, D1.name, D2.name))
        v = GradedVector({labels[k]: x for k, x in enumerate(c) if x})
        if v:
            table[labels[i], labels[j]] = v
    even_l = [l for l in labels if not l.odd]
    odd_l = [l for l in labels if l.odd]
    T = AlgebraTable("Der(%s)" % A.name, "superalgebra", even_l, odd_l, table)
    return T, dict(zip(labels, ops))


# the K(1) action on AK(1)

def k1_operator(lab: Label) -> LinearOperator:
    """x_n(e_m) = m e_{n+m}, x_n(l_i) = (i - n/2) l_{n+i}, xi_i(e_n) = l_{i+n}, xi_i(l_j) = (j-i) e_{i+j}."""
    n = lab.index
    if lab.family == "x":
        def rule(z):
            if z.family == "e":
                return GradedVector({Label("e", n + z.index): z.index})
            return GradedVector({Label("l", n + z.index, True): z.index - n / 2})
        return LinearOperator(str(lab), 0, rule=rule)
    if lab.family == "xi":
        def rule(z):
            if z.family == "e":
                return GradedVector({Label("l", n + z.index, True): 1})
            return GradedVector({Label("e", n + z.index): z.index - n})
        return LinearOperator(str(lab), 1, rule=rule)
    raise KeyError(lab)


def k1_action(v: GradedVector) -> LinearOperator:
    """Linear extension of k1_operator to a combination of K(1) labels."""
    parts = [(k1_operator(l), c) for l, c in v.terms.items()]
    par = parts[0][0].parity if parts else 0

    def rule(z):
        acc = GradedVector()
        for op, c in parts:
            acc = acc + op.on_label(z) * c
        return acc

    return LinearOperator(str(v), par, rule=rule)


def check_K1_action(window=3, generators_window=None, odd_sign=1) -> Report:
    """Every generator of K(1) in the window is a derivation of AK(1) on window pairs,
    and the operators satisfy the K(1) relations on window labels."""
    gw = window if generators_window is None else generators_window
    A = build_AK1(window)
    K = build_K1(gw)
    rep = Report("K(1) on AK(1)", window)
    for g in K.basis:
        rep.merge(derivation_defect(k1_operator(g), A, odd_sign=odd_sign), prefix="der:")
    for g, h in itertools.product(K.basis, K.basis):
        lhs = supercommutator(k1_operator(g), k1_operator(h))
        rhs = k1_action(K.mul(g, h))
        for z in A.basis:
            rep.add("relations", (g, h, z), lhs.on_label(z) - rhs.on_label(z))
    return rep


# Der(asl(2)) and osp(1|2)

def osp12_on_asl2():
    """osp(1|2) inside K(1) acting on the copy {e_0; l_1/2, l_-1/2} of asl(2).

    Returns {osp label: LinearOperator on asl(2) labels}; the copy is
    eps -> e_0, a -> l_1/2, b -> l_-1/2.
    """
    from .graded import even, odd
    to_ak = {even("eps"): Label("e", 0), odd("a"): Label("l", Fraction(1, 2), True),
             odd("b"): Label("l", Fraction(-1, 2), True)}
    back = {v: k for k, v in to_ak.items()}
    out = {}
    for g in build_osp12().basis:
        op = k1_operator(g)
        images = {}
        for lab, img in to_ak.items():
            v = op.on_label(img)
            if any(z not in back for z in v.terms):
                raise AssertionError("%s does not preserve the asl(2) copy" % g)
            images[lab] = GradedVector({back[z]: c for z, c in v.terms.items()})
        out[g] = LinearOperator(str(g), op.parity, images)
    return out


def der_asl2_base_change(A: AlgebraTable | None = None):
    """Express each osp(1|2) generator in the computed basis of Der(asl(2)).

    Returns (matrix rows {osp label: GradedVector in D-labels}, Report of
    the bracket comparison [T u, T v] = T[u, v]).
    """
    from .catalog import build_asl2
    A = A or build_asl2()
    Der, ops = derivation_algebra(A)
    labels = list(ops)
    osp = build_osp12()
    acts = osp12_on_asl2()
    T = {}
    for g, op in acts.items():
        c = _coords([ops[l] for l in labels], A.basis, op)
        if c is None:
            raise AssertionError("%s does not act by a derivation" % g)
        T[g] = GradedVector({l: x for l, x in zip(labels, c) if x})
    rep = Report("osp(1|2) -> Der(%s)" % A.name)
    for u, v in itertools.product(osp.basis, osp.basis):
        lhs = GradedVector()
        for w, c in osp.mul(u, v).terms.items():
            lhs = lhs + T[w] * c
        rep.add("bracket", (u, v), lhs - Der.product(T[u], T[v]))
    cols = [[T[g][l] for l in labels] for g in osp.basis]
    rep.info["rank"] = rank(RatMatrix.from_columns(cols, len(labels)))
    return T, rep


def generated_algebra_dim(mats):
    """Dimension of the associative algebra (with 1) generated by square matrices."""
    if not mats:
        return 1
    n = mats[0].rows
    span = [RatMatrix.identity(n)]

    def rk(ms):
        return rank(RatMatrix.from_columns([[m[i, j] for i in range(n) for j in range(n)] for m in ms], n * n))

    r = rk(span)
    frontier = list(span)
    while frontier:
        new = []
        for w in frontier:
            for g in mats:
                cand = g @ w
                if rk(span + [cand]) > r:
                    span.append(cand)
                    r += 1
                    new.append(cand)
        frontier = new
    return r


def even_action_on_odd(Der: AlgebraTable):
    """Matrices of ad(D) for even D restricted to the odd part of Der."""
    od = Der.odd_basis
    mats = []
    for d in Der.even_basis:
        ent = {}
        for j, y in enumerate(od):
            for z, c in Der.mul(d, y).terms.items():
                ent[od.index(z), j] = c
        mats.append(RatMatrix(len(od), len(od), ent))
    return mats


def is_superalgebra(T: AlgebraTable) -> bool:
    return check_superalgebra(T).ok
