"""Split bilinear maps, their associator, and the passage to antialgebras.

A split map lives on E = V + W (V even labels, W odd labels) with
m(V,V) in V symmetric, m(V,W) in W, m(W,V) = 0, m(W,W) in V skew.
Antialgebra products and split maps are exchanged by

    ]x1,x2[ = 2 m(x1,x2),   ]x,y[ = ]y,x[ = m(x,y),   ]y1,y2[ = m(y1,y2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .graded import ZERO, AlgebraTable, GradedVector, Label, Report, check_antialgebra

HALF = Fraction(1, 2)


@dataclass
class SplitBilinearMap:
    """m on labels. ``V``/``W`` are the (windowed) label lists that checks run over.

    ``table`` holds finite maps; ``rule`` evaluates family maps. With
    ``allow_noncommutative`` the V x V block need not be symmetric.
    """

    name: str
    V: list
    W: list
    table: dict | None = None
    rule: Callable | None = None
    split: bool = True
    allow_noncommutative: bool = False
    meta: dict = field(default_factory=dict)

    def m(self, u: Label, v: Label) -> GradedVector:
        if self.rule is not None:
            return self.rule(u, v)
        return self.table.get((u, v), ZERO)

    def __call__(self, u, v) -> GradedVector:
        if isinstance(u, Label):
            u = GradedVector.basis(u)
        if isinstance(v, Label):
            v = GradedVector.basis(v)
        acc = {}
        for x, a in u.terms.items():
            for y, b in v.terms.items():
                for z, c in self.m(x, y).terms.items():
                    acc[z] = acc.get(z, 0) + a * b * c
        return GradedVector(acc)

    @property
    def basis(self):
        return list(self.V) + list(self.W)

    def shape_violations(self):
        """Witnesses against the split shape conditions."""
        out = []
        for x1, x2 in itertools.product(self.V, self.V):
            r = self.m(x1, x2)
            if any(z.odd for z in r.terms):
                out.append(("VxV->V", (x1, x2)))
            if not self.allow_noncommutative and r != self.m(x2, x1):
                out.append(("VxV symmetric", (x1, x2)))
        for x, y in itertools.product(self.V, self.W):
            if any(not z.odd for z in self.m(x, y).terms):
                out.append(("VxW->W", (x, y)))
            if self.m(y, x):
                out.append(("WxV=0", (y, x)))
        for y1, y2 in itertools.product(self.W, self.W):
            r = self.m(y1, y2)
            if any(z.odd for z in r.terms):
                out.append(("WxW->V", (y1, y2)))
            if r != -self.m(y2, y1):
                out.append(("WxW skew", (y1, y2)))
        return out


def full_map(name, basis, table) -> SplitBilinearMap:
    """Unsplit bilinear map on ``basis`` (everything treated as V)."""
    table = {k: v if isinstance(v, GradedVector) else GradedVector(v) for k, v in table.items()}
    return SplitBilinearMap(name, list(basis), [], table, split=False, allow_noncommutative=True)


def gerstenhaber_square(m: SplitBilinearMap, triples=None) -> dict:
    """Half of [m,m]: (x1,x2,x3) -> m(m(x1,x2),x3) - m(x1,m(x2,x3)), nonzero entries only."""
    if triples is None:
        triples = itertools.product(m.basis, repeat=3)
    out = {}
    for t in triples:
        x1, x2, x3 = t
        d = m(m(x1, x2), x3) - m(x1, m(x2, x3))
        if d:
            out[t] = d
    return out


def bracket_to_m(A: AlgebraTable) -> SplitBilinearMap:
    if A.kind != "antialgebra":
        raise ValueError("%s is not an antialgebra" % A.name)

    def rule(u, v):
        if not u.odd and not v.odd:
            return A.mul(u, v) * HALF
        if not u.odd and v.odd:
            return A.mul(u, v)
        if u.odd and not v.odd:
            return ZERO
        return A.mul(u, v)

    if A.is_family:
        return SplitBilinearMap("m(%s)" % A.name, list(A.even_basis), list(A.odd_basis), None, rule,
                                meta={"algebra": A})
    table = {}
    for u in A.basis:
        for v in A.basis:
            r = rule(u, v)
            if r:
                table[u, v] = r
    return SplitBilinearMap("m(%s)" % A.name, list(A.even_basis), list(A.odd_basis), table,
                            meta={"algebra": A})


def m_to_bracket(m: SplitBilinearMap, check_shape=True) -> AlgebraTable:
    if check_shape:
        bad = m.shape_violations()
        if bad:
            raise ValueError("split shape violated: %s" % (bad[:3],))

    def rule(u, v):
        if not u.odd and not v.odd:
            return m.m(u, v) * 2
        if not u.odd and v.odd:
            return m.m(u, v)
        if u.odd and not v.odd:
            return m.m(v, u)
        return m.m(u, v)

    src = m.meta.get("algebra")
    if m.rule is not None and src is not None and src.is_family:
        return AlgebraTable(src.name, "antialgebra", list(m.V), list(m.W), None, rule, src.contains,
                            src.window, src.family_name, src.window_labels, {})
    if m.rule is not None:
        raise ValueError("family maps need their source algebra to be rebuilt")
    table = {}
    for u in m.basis:
        for v in m.basis:
            r = rule(u, v)
            if r:
                table[u, v] = r
    name = src.name if src is not None else m.name + "|bracket"
    return AlgebraTable(name, "antialgebra", list(m.V), list(m.W), table)


SPLIT_IDENTITIES = ("First", "Second", "Third", "Fourth")
PAIRED_AXIOM = {"First": "AssCommT", "Second": "CacT", "Third": "ICommT", "Fourth": "Jack"}


def split_identities(m: SplitBilinearMap) -> Report:
    """The four skew-symmetrized associator identities, straight from their
    displayed form."""
    rep = Report(m.name)
    V, W = m.V, m.W
    for x1, x2, x3 in itertools.product(V, V, V):
        rep.add("First", (x1, x2, x3), m(m(x1, x2), x3) - m(x1, m(x2, x3)))
    for x1, x2, y in itertools.product(V, V, W):
        rep.add("Second", (x1, x2, y), m(m(x1, x2), y) - m(x1, m(x2, y)))
    for x, y1, y2 in itertools.product(V, W, W):
        rep.add("Third", (x, y1, y2),
                m(m(x, y1), y2) * HALF - m(m(x, y2), y1) * HALF - m(x, m(y1, y2)))
    for y1, y2, y3 in itertools.product(W, W, W):
        rep.add("Fourth", (y1, y2, y3),
                m(m(y1, y2), y3) + m(m(y2, y3), y1) + m(m(y3, y1), y2))
    return rep


def skew_equivalence(m: SplitBilinearMap) -> Report:
    """Run both sides and pair them triple by triple.

    Violations: every failing identity/axiom, plus a "pairing" entry for any
    triple where an identity and its paired axiom disagree about vanishing.
    """
    ids = split_identities(m)
    A = m_to_bracket(m, check_shape=not m.allow_noncommutative)
    ax = check_antialgebra(A, identities=("AssCommT", "CacT", "ICommT", "Jack"))
    rep = Report(m.name)
    rep.merge(ids)
    rep.merge(ax)
    for ident, axiom in PAIRED_AXIOM.items():
        left = set(ids.witnesses(ident))
        right = set(ax.witnesses(axiom))
        rep.count("pairing:" + ident)
        for w in sorted(left ^ right, key=lambda t: [l.sort_key() for l in t]):
            rep.violations.append(_pairing(ident, axiom, w, w in left))
    rep.info["failed_pairs"] = {k: sorted(str(w) for w in ids.witnesses(k)) for k in SPLIT_IDENTITIES
                                if ids.witnesses(k)}
    return rep


def _pairing(ident, axiom, w, in_identity):
    from .graded import Violation
    msg = "%s fails but %s holds" % ((ident, axiom) if in_identity else (axiom, ident))
    return Violation("pairing:" + ident, w, msg)


def perturb(m: SplitBilinearMap, entries: dict, name=None) -> SplitBilinearMap:
    """Finite map with some table entries replaced (absent key -> unchanged)."""
    table = dict(m.table)
    for k, v in entries.items():
        table[k] = v if isinstance(v, GradedVector) else GradedVector(v)
    return SplitBilinearMap(name or m.name + "*", list(m.V), list(m.W), table,
                            allow_noncommutative=m.allow_noncommutative, meta=dict(m.meta, algebra=None))
