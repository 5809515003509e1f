"""Z2-graded algebras given by structure constants.

An algebra is either a finite table ``(label, label) -> GradedVector`` or an
index rule for the infinite families, which is evaluated exactly for any pair
of labels. Checks on a family only quantify over a finite window of labels;
products themselves are never truncated.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .linalg import as_rational

EVEN, ODD = 0, 1


@dataclass(frozen=True, eq=True)
class Label:
    family: str
    index: Fraction | None = None
    odd: bool = False

    def __post_init__(self):
        if self.index is not None:
            idx = as_rational(self.index)
            if idx.denominator not in (1, 2):
                raise ValueError("index must be an integer or half-integer: %s" % idx)
            object.__setattr__(self, "index", idx)
        object.__setattr__(self, "_hash", hash((self.family, self.index, self.odd)))

    def __hash__(self):
        return self._hash

    @property
    def parity(self) -> int:
        return ODD if self.odd else EVEN

    def sort_key(self):
        return (self.odd, self.family, self.index if self.index is not None else Fraction(0))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.index is None:
            return self.family
        return "%s:%s" % (self.family, self.index)

    __repr__ = __str__


def parse_label(text: str, odd: bool) -> Label:
    text = text.strip()
    if ":" in text and not text.startswith("s:("):
        fam, idx = text.split(":", 1)
        return Label(fam, Fraction(idx), odd)
    return Label(text, None, odd)


def even(family, index=None):
    return Label(family, index, False)


def odd(family, index=None):
    return Label(family, index, True)


class GradedVector:
    """Finite formal linear combination of labels with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, v in (terms.items() if isinstance(terms, dict) else terms):
                v = as_rational(v)
                if v:
                    clean[k] = clean.get(k, 0) + v
                    if not clean[k]:
                        del clean[k]
        self.terms = clean

    @classmethod
    def basis(cls, label, coeff=1):
        return cls({label: coeff})

    @classmethod
    def _raw(cls, terms):
        # trusted input: nonzero Fraction values only
        v = cls.__new__(cls)
        v.terms = terms
        return v

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0].sort_key()))

    def __getitem__(self, label):
        return self.terms.get(label, Fraction(0))

    def __add__(self, other):
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for k, v in other.terms.items():
            w = t.get(k)
            if w is None:
                t[k] = v
            else:
                w = w + v
                if w:
                    t[k] = w
                else:
                    del t[k]
        return GradedVector._raw(t)

    def __sub__(self, other):
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, c):
        c = as_rational(c)
        if not c:
            return GradedVector()
        if c == 1:
            return self
        return GradedVector._raw({k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, GradedVector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def labels(self):
        return sorted(self.terms, key=Label.sort_key)

    def to_json(self):
        return [{"coeff": str(v), "basis": str(k)} for k, v in self]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in self:
            parts.append(("%s*%s" % (v, k)) if v != 1 else str(k))
        return " + ".join(parts)


ZERO = GradedVector()


def vec(*pairs) -> GradedVector:
    """vec((coeff, label), ...)"""
    return GradedVector([(lab, c) for c, lab in pairs])


def parity_of(v: GradedVector):
    """'even', 'odd', 'mixed' or None for the zero vector."""
    ps = {lab.odd for lab in v.terms}
    if not ps:
        return None
    if len(ps) == 2:
        return "mixed"
    return "odd" if ps.pop() else "even"


def sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass
class AlgebraTable:
    """Structure constants of a graded algebra.

    ``kind`` is "antialgebra" (product ]x,y[) or "superalgebra" (bracket [x,y]).
    Finite algebras fill ``table``; family algebras give ``rule`` plus a
    ``contains`` predicate and a ``window`` used to enumerate checked labels.
    """

    name: str
    kind: str
    even_basis: list = field(default_factory=list)
    odd_basis: list = field(default_factory=list)
    table: dict | None = None
    rule: Callable | None = None
    contains: Callable | None = None
    window: Fraction | None = None
    family_name: str | None = None
    window_labels: Callable | None = None
    meta: dict = field(default_factory=dict)

    @property
    def is_family(self):
        return self.rule is not None

    @property
    def basis(self):
        return list(self.even_basis) + list(self.odd_basis)

    @property
    def dims(self):
        return (len(self.even_basis), len(self.odd_basis))

    def knows(self, label):
        if self.is_family:
            return self.contains(label)
        return label in self._basis_set()

    def _basis_set(self):
        s = self.meta.get("_basis_set")
        if s is None:
            s = frozenset(self.basis)
            self.meta["_basis_set"] = s
        return s

    def mul(self, x: Label, y: Label) -> GradedVector:
        if self.is_family:
            # rules are pure, so results are memoized per (x, y)
            cache = self.meta.setdefault("_mul_cache", {})
            r = cache.get((x, y))
            if r is None:
                for lab in (x, y):
                    if not self.contains(lab):
                        raise KeyError("label %s outside the index set of %s" % (lab, self.name))
                r = cache[x, y] = self.rule(x, y)
            return r
        bs = self._basis_set()
        for lab in (x, y):
            if lab not in bs:
                raise KeyError("unknown label %s in %s" % (lab, self.name))
        return self.table.get((x, y), ZERO)

    def product(self, u, v) -> GradedVector:
        ul, vl = isinstance(u, Label), isinstance(v, Label)
        if ul and vl:
            return self.mul(u, v)
        if ul:
            u = GradedVector.basis(u)
        if vl:
            v = GradedVector.basis(v)
        acc = {}
        for x, a in u.terms.items():
            for y, b in v.terms.items():
                ab = a * b
                for z, c in self.mul(x, y).terms.items():
                    acc[z] = acc.get(z, 0) + ab * c
        return GradedVector._raw({z: c for z, c in acc.items() if c})

    def with_window(self, window):
        """Same family algebra, different checking window."""
        if not self.is_family:
            return self
        ev, od = self.window_labels(window)
        return AlgebraTable(self.name, self.kind, ev, od, None, self.rule, self.contains,
                            as_rational(window), self.family_name, self.window_labels, {})

    def restricted(self, labels, name=None):
        """Finite sub-table on ``labels``; raises if the span is not closed."""
        labels = list(labels)
        lset = set(labels)
        table = {}
        for x in labels:
            for y in labels:
                r = self.mul(x, y)
                for z in r.terms:
                    if z not in lset:
                        raise ValueError("%s is not closed: ]%s,%s[ hits %s" % (labels, x, y, z))
                if r:
                    table[x, y] = r
        ev = [l for l in labels if not l.odd]
        od = [l for l in labels if l.odd]
        return AlgebraTable(name or self.name + "|restricted", self.kind, ev, od, table)


def finite_table(name, kind, even_basis, odd_basis, products, companions=True):
    """Build a finite table from ``{(x, y): vector}``.

    With ``companions`` the reversed orientation is filled from the kind's
    symmetry rule unless it was given explicitly.
    """
    table = {}
    for (x, y), r in products.items():
        if not isinstance(r, GradedVector):
            r = GradedVector(r)
        if r:
            table[x, y] = r
    if companions:
        for (x, y), r in list(table.items()):
            if (y, x) in table or (y, x) in products:
                continue
            s = sign(x.parity * y.parity)
            if kind == "superalgebra":
                s = -s
            table[y, x] = r * s
    return AlgebraTable(name, kind, list(even_basis), list(odd_basis), table)


@dataclass
class Violation:
    identity: str
    witness: tuple
    defect: object

    def to_json(self):
        d = self.defect
        if isinstance(d, GradedVector):
            d = d.to_json()
        elif hasattr(d, "to_json"):
            d = d.to_json()
        return {"identity": self.identity, "witness": [str(w) for w in self.witness], "defect": d}


@dataclass
class Report:
    subject: str
    window: object = None
    violations: list = field(default_factory=list)
    checked: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def add(self, identity, witness, defect):
        self.checked[identity] = self.checked.get(identity, 0) + 1
        if defect:
            self.violations.append(Violation(identity, tuple(witness), defect))

    def count(self, identity):
        self.checked[identity] = self.checked.get(identity, 0) + 1

    def failed(self):
        return sorted({v.identity for v in self.violations})

    def witnesses(self, identity):
        return [v.witness for v in self.violations if v.identity == identity]

    def merge(self, other, prefix=""):
        for k, n in other.checked.items():
            self.checked[prefix + k] = self.checked.get(prefix + k, 0) + n
        for v in other.violations:
            self.violations.append(Violation(prefix + v.identity, v.witness, v.defect))
        return self

    def to_json(self):
        out = {
            "algebra": self.subject,
            "window": None if self.window is None else str(self.window),
            "checked": dict(sorted(self.checked.items())),
            "violations": [v.to_json() for v in self.violations],
        }
        if self.info:
            out["info"] = _jsonable(self.info)
        return out

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (Label, GradedVector)):
        return x.to_json() if isinstance(x, GradedVector) else str(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


ANTIALGEBRA_IDENTITIES = ("SkewP", "AssCommT", "CacT", "ICommT", "Jack")


def check_antialgebra(A: AlgebraTable, window=None, identities=ANTIALGEBRA_IDENTITIES) -> Report:
    """Evaluate the five defining identities on all basis pairs/triples."""
    if A.kind != "antialgebra":
        raise ValueError("%s is not an antialgebra table" % A.name)
    if window is not None:
        A = A.with_window(window)
    P = A.product
    V, W = A.even_basis, A.odd_basis
    rep = Report(A.name, A.window)

    if "SkewP" in identities:
        basis = V + W
        for x in basis:
            for y in basis:
                s = sign(x.parity * y.parity)
                rep.add("SkewP", (x, y), P(x, y) - P(y, x) * s)
    if "AssCommT" in identities:
        for x1, x2, x3 in itertools.product(V, V, V):
            rep.add("AssCommT", (x1, x2, x3), P(x1, P(x2, x3)) - P(P(x1, x2), x3))
    if "CacT" in identities:
        # ordered pairs, so both argument orders of x1, x2 are covered
        for x1, x2, y in itertools.product(V, V, W):
            rep.add("CacT", (x1, x2, y), P(x1, P(x2, y)) - P(P(x1, x2), y) * Fraction(1, 2))
    if "ICommT" in identities:
        for x, y1, y2 in itertools.product(V, W, W):
            rep.add("ICommT", (x, y1, y2),
                    P(x, P(y1, y2)) - P(P(x, y1), y2) - P(y1, P(x, y2)))
    if "Jack" in identities:
        for y1, y2, y3 in itertools.product(W, W, W):
            rep.add("Jack", (y1, y2, y3),
                    P(y1, P(y2, y3)) + P(y2, P(y3, y1)) + P(y3, P(y1, y2)))
    return rep


def check_parity(A: AlgebraTable, window=None) -> Report:
    if window is not None:
        A = A.with_window(window)
    rep = Report(A.name, A.window)
    for x in A.basis:
        for y in A.basis:
            r = A.mul(x, y)
            want = (x.parity + y.parity) % 2
            bad = GradedVector({z: c for z, c in r.terms.items() if z.parity != want})
            rep.add("parity", (x, y), bad)
    return rep


def check_superalgebra(A: AlgebraTable, window=None) -> Report:
    """Super-antisymmetry and super-Jacobi on basis pairs/triples.

    Jacobi is checked in the derivation form
    [x,[y,z]] = [[x,y],z] + (-1)^{p(x)p(y)} [y,[x,z]].
    """
    if A.kind != "superalgebra":
        raise ValueError("%s is not a superalgebra table" % A.name)
    if window is not None:
        A = A.with_window(window)
    B = A.product
    basis = A.basis
    rep = Report(A.name, A.window)
    for x in basis:
        for y in basis:
            rep.add("antisymmetry", (x, y), B(x, y) + B(y, x) * sign(x.parity * y.parity))
    for x, y, z in itertools.product(basis, basis, basis):
        rep.add("jacobi", (x, y, z),
                B(x, B(y, z)) - B(B(x, y), z) - B(y, B(x, z)) * sign(x.parity * y.parity))
    return rep


def is_unital(A: AlgebraTable):
    """Label-free search for a unit of the even part: returns the unit or None.

    Reported as a property only; not an axiom.
    """
    from .linalg import RatMatrix, solve
    V = A.even_basis
    if not V or A.is_family:
        return None
    # unknown u = sum c_k v_k with ]u, v[ = v for all even v
    rows, rhs = [], []
    for v in V:
        for z in V:
            rows.append([A.mul(vk, v)[z] for vk in V])
            rhs.append(1 if z == v else 0)
    sol = solve(RatMatrix.from_rows(rows, len(V)), rhs)
    if sol is None:
        return None
    return GradedVector({vk: c for vk, c in zip(V, sol)})
