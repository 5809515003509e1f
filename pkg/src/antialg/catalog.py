"""Named algebras, modules, semidirect products and the ``.alg.json`` format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .graded import (
    ZERO, AlgebraTable, GradedVector, Label, even, finite_table, odd, parse_label, sign,
)
from .linalg import as_rational

HALF = Fraction(1, 2)


class SpecError(ValueError):
    pass


# finite algebras

def build_asl2() -> AlgebraTable:
    eps, a, b = even("eps"), odd("a"), odd("b")
    products = {
        (eps, eps): {eps: 1},
        (eps, a): {a: HALF},
        (eps, b): {b: HALF},
        (a, b): {eps: HALF},
    }
    return finite_table("asl2", "antialgebra", [eps], [a, b], products)


def build_ah1(kappa=0) -> AlgebraTable:
    kappa = as_rational(kappa)
    alpha, a, b = even("alpha"), odd("a"), odd("b")
    products = {
        (alpha, a): {b: kappa},
        (a, b): {alpha: HALF},
    }
    return finite_table("ah1:%s" % kappa, "antialgebra", [alpha], [a, b], products)


def build_abelian(n_even=0, n_odd=2) -> AlgebraTable:
    ev = [even("u", i) for i in range(n_even)]
    od = [odd("w", i) for i in range(n_odd)]
    return finite_table("abelian%d|%d" % (n_even, n_odd), "antialgebra", ev, od, {})


# family algebras

def _is_int(q):
    return q is not None and q.denominator == 1


def _is_half(q):
    return q is not None and q.denominator == 2


def _window_labels(even_fam, odd_fam):
    def labels(window):
        w = as_rational(window)
        n = int(w)
        ev = [Label(even_fam, Fraction(k), False) for k in range(-n, n + 1)]
        top = int(w - HALF) if w >= HALF else -1
        od = [Label(odd_fam, Fraction(2 * k + 1, 2), True) for k in range(-top - 1, top + 1)]
        return ev, od
    return labels


def build_AK1(window=4, odd_sign=1) -> AlgebraTable:
    """Conformal antialgebra: ]e_n,e_m[ = e_{n+m}, ]e_n,l_i[ = l_{n+i}/2,
    ]l_i,l_j[ = odd_sign*(i-j)/2 e_{i+j}.

    ``odd_sign=-1`` is the reflected convention (isomorphic via n -> -n).
    """
    odd_sign = as_rational(odd_sign)

    def contains(lab):
        if lab.family == "e":
            return not lab.odd and _is_int(lab.index)
        if lab.family == "l":
            return lab.odd and _is_half(lab.index)
        return False

    def rule(x, y):
        if not x.odd and not y.odd:
            return GradedVector({Label("e", x.index + y.index): 1})
        if x.odd and y.odd:
            return GradedVector({Label("e", x.index + y.index): odd_sign * (x.index - y.index) / 2})
        return GradedVector({Label("l", x.index + y.index, True): HALF})

    labels = _window_labels("e", "l")
    ev, od = labels(window)
    name = "ak1" if odd_sign == 1 else "ak1[odd_sign=-1]"
    return AlgebraTable(name, "antialgebra", ev, od, None, rule, contains,
                        as_rational(window), "AK1", labels, {"odd_sign": odd_sign})


def build_K1(window=4) -> AlgebraTable:
    """Neveu-Schwarz superalgebra: [x_i,x_j] = (j-i)x_{i+j},
    [x_i,xi_j] = (j-i/2) xi_{i+j}, [xi_i,xi_j] = 2 x_{i+j}."""

    def contains(lab):
        if lab.family == "x":
            return not lab.odd and _is_int(lab.index)
        if lab.family == "xi":
            return lab.odd and _is_half(lab.index)
        return False

    def rule(u, v):
        i, j = u.index, v.index
        if not u.odd and not v.odd:
            return GradedVector({Label("x", i + j): j - i})
        if not u.odd and v.odd:
            return GradedVector({Label("xi", i + j, True): j - i / 2})
        if u.odd and not v.odd:
            return GradedVector({Label("xi", i + j, True): -(i - j / 2)})
        return GradedVector({Label("x", i + j): 2})

    labels = _window_labels("x", "xi")
    ev, od = labels(window)
    return AlgebraTable("k1", "superalgebra", ev, od, None, rule, contains,
                        as_rational(window), "K1", labels)


def build_osp12() -> AlgebraTable:
    K = build_K1(1)
    labels = [Label("x", Fraction(k)) for k in (-1, 0, 1)] + \
             [Label("xi", Fraction(k, 2), True) for k in (-1, 1)]
    T = K.restricted(labels, name="osp12")
    return T


def asl2_embedding(i) -> dict:
    """Map asl(2) labels into AK(1): eps -> e_0, a -> l_i, b -> c*l_{-i}.

    c is fixed by ]a,b[ = eps/2: ]l_i, l_{-i}[ = i e_0, so c = 1/(2i).
    """
    i = as_rational(i)
    return {
        even("eps"): GradedVector({Label("e", 0): 1}),
        odd("a"): GradedVector({Label("l", i, True): 1}),
        odd("b"): GradedVector({Label("l", -i, True): 1 / (2 * i)}),
    }


def check_embedding(source: AlgebraTable, target: AlgebraTable, images: dict):
    """Defects f(]x,y[) - ]f(x),f(y)[ over basis pairs of ``source``."""
    from .graded import Report
    rep = Report("%s -> %s" % (source.name, target.name))

    def f(v):
        out = GradedVector()
        for lab, c in v.terms.items():
            out = out + images[lab] * c
        return out

    for x in source.basis:
        for y in source.basis:
            rep.add("homomorphism", (x, y), f(source.mul(x, y)) - target.product(images[x], images[y]))
    return rep


# modules and semidirect products

@dataclass
class ModuleSpec:
    """rho_a(b) = ]a, b[ inside the semidirect product."""

    algebra: AlgebraTable
    name: str
    even_basis: list = field(default_factory=list)
    odd_basis: list = field(default_factory=list)
    rho: dict = field(default_factory=dict)
    rule: Callable | None = None
    contains: Callable | None = None
    window_labels: Callable | None = None

    @property
    def basis(self):
        return list(self.even_basis) + list(self.odd_basis)

    @property
    def is_family(self):
        return self.rule is not None

    def act(self, a: Label, b: Label) -> GradedVector:
        if self.rule is not None:
            return self.rule(a, b)
        return self.rho.get((a, b), ZERO)

    def knows(self, lab):
        if self.contains is not None:
            return self.contains(lab)
        return lab in set(self.basis)

    def check_parity(self):
        bad = []
        for a in self.algebra.basis:
            for b in self.basis:
                for z in self.act(a, b).terms:
                    if z.parity != (a.parity + b.parity) % 2:
                        bad.append((a, b, z))
        return bad


def trivial_module(A: AlgebraTable, n_even=1, n_odd=0) -> ModuleSpec:
    ev = [even("t", k) for k in range(n_even)]
    od = [odd("t", k) for k in range(n_even, n_even + n_odd)]
    return ModuleSpec(A, "trivial", ev, od, {}, window_labels=lambda window: (list(ev), list(od)))


def _copy(lab: Label, tag: str) -> Label:
    return Label(lab.family + tag, lab.index, lab.odd)


def _uncopy(lab: Label, tag: str) -> Label:
    return Label(lab.family[: -len(tag)], lab.index, lab.odd)


def _relabel(v: GradedVector, tag: str) -> GradedVector:
    return GradedVector({_copy(k, tag): c for k, c in v.terms.items()})


def adjoint_module(A: AlgebraTable) -> ModuleSpec:
    """A acting on a copy of itself (labels suffixed with a prime)."""
    tag = "'"
    if A.is_family:
        def rule(a, b):
            return _relabel(A.mul(a, _uncopy(b, tag)), tag)

        def contains(b):
            return b.family.endswith(tag) and A.contains(_uncopy(b, tag))

        return ModuleSpec(A, "adjoint", [_copy(l, tag) for l in A.even_basis],
                          [_copy(l, tag) for l in A.odd_basis], {}, rule, contains,
                          _tagged_window(A, tag))
    rho = {}
    for a in A.basis:
        for b in A.basis:
            r = A.mul(a, b)
            if r:
                rho[a, _copy(b, tag)] = _relabel(r, tag)
    return ModuleSpec(A, "adjoint", [_copy(l, tag) for l in A.even_basis],
                      [_copy(l, tag) for l in A.odd_basis], rho)


def _tagged_window(A, tag):
    def labels(window):
        ev, od = A.window_labels(window)
        return [_copy(l, tag) for l in ev], [_copy(l, tag) for l in od]
    return labels


def coadjoint_module(A: AlgebraTable, twist=True, koszul=True) -> ModuleSpec:
    """Dual module with rho_a = (-1)^{p(a)} ad*_a.

    (ad*_a f)(z) = (-1)^{p(a)p(f)} f(]a,z[). ``koszul=False`` drops that
    sign (plain transpose), which is not a module. ``twist`` only composes rho
    with the automorphism y -> -y of the odd part, so it never changes
    whether the result is a module.
    """
    tag = "*"

    def rule(a, f):
        x = _uncopy(f, tag)
        s = sign(a.parity * f.parity) if koszul else 1
        if twist:
            s *= sign(a.parity)
        out = {}
        # for the families ]a,z[ can only hit x when z.index = x.index - a.index
        cands = _family_preimages(A, a, x) if A.is_family else A.basis
        for z in cands:
            c = A.mul(a, z)[x]
            if c:
                out[_copy(z, tag)] = s * c
        return GradedVector(out)

    name = "coadjoint"
    if not koszul:
        name += "[plain-transpose]"
    elif not twist:
        name += "[untwisted]"
    ev = [_copy(l, tag) for l in A.even_basis]
    od = [_copy(l, tag) for l in A.odd_basis]
    if A.is_family:
        def contains(f):
            return f.family.endswith(tag) and A.contains(_uncopy(f, tag))
        return ModuleSpec(A, name, ev, od, {}, rule, contains, _tagged_window(A, tag))
    rho = {}
    for a in A.basis:
        for f in ev + od:
            r = rule(a, f)
            if r:
                rho[a, f] = r
    return ModuleSpec(A, name, ev, od, rho)


def _family_preimages(A, a, x):
    # all structure rules here add indices, so ]a,z[ can only hit x when
    # z.index = x.index - a.index
    idx = x.index - a.index
    out = []
    for fam_even, fam_odd in (("e", "l"), ("x", "xi")):
        for lab in (Label(fam_even, idx, False) if idx.denominator == 1 else None,
                    Label(fam_odd, idx, True) if idx.denominator == 2 else None):
            if lab is not None and A.contains(lab):
                out.append(lab)
    return out


def semidirect(A: AlgebraTable, M: ModuleSpec) -> AlgebraTable:
    """]( a,b),(a',b')[ = (]a,a'[, rho_a b' + (-1)^{p(a')p(b)} rho_{a'} b)."""
    if M.algebra is not A and M.algebra.name != A.name:
        raise ValueError("module is over %s, not %s" % (M.algebra.name, A.name))
    bad = M.check_parity()
    if bad:
        raise ValueError("rho does not preserve parity: %s" % (bad[:3],))

    def rule(x, y):
        xa, ya = A.knows(x), A.knows(y)
        if xa and ya:
            return A.mul(x, y)
        if xa:
            return M.act(x, y)
        if ya:
            return M.act(y, x) * sign(y.parity * x.parity)
        return ZERO

    name = "%s|x%s" % (A.name, M.name)
    if A.is_family or M.is_family:
        def contains(lab):
            return A.contains(lab) or M.knows(lab)

        def labels(window):
            ev, od = A.window_labels(window)
            mev, mod = M.window_labels(window)
            return ev + mev, od + mod

        ev, od = labels(A.window)
        return AlgebraTable(name, A.kind, ev, od, None, rule, contains, A.window,
                            "semidirect", labels, {"base": A, "module": M})
    table = {}
    basis = A.basis + M.basis
    for x in basis:
        for y in basis:
            r = rule(x, y)
            if r:
                table[x, y] = r
    return AlgebraTable(name, A.kind, A.even_basis + M.even_basis, A.odd_basis + M.odd_basis,
                        table, meta={"base": A, "module": M})


# mutations that break exactly one identity

def mutate(A: AlgebraTable, x: Label, y: Label, value, companion=True, add=False, name=None) -> AlgebraTable:
    """Finite table with ]x,y[ replaced by (or, with ``add``, increased by) ``value``.

    With ``companion`` the (SkewP) partner ]y,x[ follows; without it only one
    orientation changes, which is how (SkewP) itself gets broken.
    """
    value = value if isinstance(value, GradedVector) else GradedVector(value)
    table = dict(A.table)
    new = table.get((x, y), ZERO) + value if add else value
    table[x, y] = new
    if companion and x != y:
        table[y, x] = new * sign(x.parity * y.parity)
    table = {k: v for k, v in table.items() if v}
    return AlgebraTable(name or A.name + "*", A.kind, list(A.even_basis), list(A.odd_basis), table)


def mutation_catalog() -> dict:
    """identity -> (mutated table, a witness the checker must report)."""
    asl2 = build_asl2()
    eps, a, b = asl2.basis
    ah = build_ah1(1)
    alpha, a1, b1 = ah.basis
    ab = build_abelian(2, 1)
    u0, u1 = ab.even_basis
    sd = semidirect(asl2, adjoint_module(asl2))
    eps_, b_ = _copy(eps, "'"), _copy(b, "'")
    return {
        "SkewP": (mutate(asl2, a, eps, {}, companion=False, name="asl2[]a,eps[=0]"), (eps, a)),
        "AssCommT": (mutate(ab, u0, u1, {u0: 1}, name="abelian2|1[]u0,u1[=u0]"), (u0, u1, u1)),
        "CacT": (mutate(ah, alpha, b1, {a1: 1}, name="ah1:1[]alpha,b[=a]"), (alpha, alpha, a1)),
        "ICommT": (mutate(asl2, eps, a, {}, name="asl2[]eps,a[=0]"), (eps, a, b)),
        "Jack": (mutate(sd, eps_, a, {b_: 1}, add=True, name="asl2|xadjoint[]eps',a[+=b']"), (a, b, _copy(a, "'"))),
    }


# named lookup used by the CLI

def by_name(name: str) -> AlgebraTable:
    name = name.strip()
    if name == "asl2":
        return build_asl2()
    if name == "osp12":
        return build_osp12()
    if name.startswith("ah1"):
        kappa = name.split(":", 1)[1] if ":" in name else "0"
        return build_ah1(Fraction(kappa))
    if name.startswith("ak1"):
        w = name.split(":", 1)[1] if ":" in name else "4"
        return build_AK1(Fraction(w))
    if name.startswith("k1"):
        w = name.split(":", 1)[1] if ":" in name else "4"
        return build_K1(Fraction(w))
    raise SpecError("unknown algebra name %r (try asl2, ah1:<kappa>, ak1:<window>, k1:<window>, osp12)" % name)


def module_by_name(A: AlgebraTable, name: str) -> ModuleSpec:
    if name == "trivial":
        return trivial_module(A)
    if name == "adjoint":
        return adjoint_module(A)
    if name == "coadjoint":
        return coadjoint_module(A)
    path = Path(name)
    if path.exists():
        return load_module(path, A)
    raise SpecError("unknown module %r (trivial, adjoint, coadjoint or a .mod.json file)" % name)


# file formats

def _vec_to_json(v: GradedVector):
    return [{"coeff": str(c), "basis": str(k)} for k, c in v]


def _parse_coeff(text, where):
    if isinstance(text, float) or (isinstance(text, str) and any(ch in text for ch in ".eE")):
        raise SpecError("%s: coefficient %r is not an exact rational (write it as p/q)" % (where, text))
    try:
        return as_rational(text if isinstance(text, str) else str(text))
    except (ValueError, ZeroDivisionError, TypeError):
        raise SpecError("%s: coefficient %r is not an exact rational" % (where, text)) from None


def spec_dict(A: AlgebraTable) -> dict:
    d = {"name": A.name, "kind": A.kind,
         "even_basis": [str(l) for l in A.even_basis],
         "odd_basis": [str(l) for l in A.odd_basis]}
    if A.is_family:
        d["products"] = []
        d["family"] = {"rule_name": A.family_name, "window": {"min": str(-A.window), "max": str(A.window)}}
        return d
    # one orientation per unordered pair; the other is regenerated on load
    seen = set()
    prods = []
    basis = A.basis
    for x in basis:
        for y in basis:
            if (y, x) in seen:
                continue
            seen.add((x, y))
            r = A.table.get((x, y), ZERO)
            s = sign(x.parity * y.parity) * (-1 if A.kind == "superalgebra" else 1)
            rev = A.table.get((y, x), ZERO)
            if r:
                prods.append({"left": str(x), "right": str(y), "result": _vec_to_json(r)})
            if x != y and rev != r * s:
                # the reverse orientation is not the companion: store it too
                prods.append({"left": str(y), "right": str(x), "result": _vec_to_json(rev)})
    d["products"] = prods
    return d


def save_spec(A: AlgebraTable, path):
    Path(path).write_text(json.dumps(spec_dict(A), indent=2) + "\n", encoding="utf-8")


def parse_spec(d: dict, source="<spec>") -> AlgebraTable:
    for key in ("name", "kind"):
        if key not in d:
            raise SpecError("%s: missing field %r" % (source, key))
    kind = d["kind"]
    if kind not in ("antialgebra", "superalgebra"):
        raise SpecError("%s: field 'kind' must be antialgebra or superalgebra, got %r" % (source, kind))
    fam = d.get("family")
    if fam:
        rule_name = fam.get("rule_name")
        win = fam.get("window", {})
        w = max(abs(_parse_coeff(win.get("min", "-4"), source)), abs(_parse_coeff(win.get("max", "4"), source)))
        if rule_name == "AK1":
            return build_AK1(w)
        if rule_name == "K1":
            return build_K1(w)
        raise SpecError("%s: family.rule_name must be AK1 or K1, got %r" % (source, rule_name))
    ev = [parse_label(s, False) for s in d.get("even_basis", [])]
    od = [parse_label(s, True) for s in d.get("odd_basis", [])]
    labels = {str(l): l for l in ev + od}
    if len(labels) != len(ev) + len(od):
        raise SpecError("%s: duplicate basis labels" % source)

    def lookup(s, where):
        if s not in labels:
            raise SpecError("%s: %s references undeclared basis label %r" % (source, where, s))
        return labels[s]

    products = {}
    for k, entry in enumerate(d.get("products", [])):
        where = "products[%d]" % k
        x = lookup(entry.get("left"), where + ".left")
        y = lookup(entry.get("right"), where + ".right")
        res = {}
        for t, term in enumerate(entry.get("result", [])):
            z = lookup(term.get("basis"), "%s.result[%d]" % (where, t))
            res[z] = res.get(z, 0) + _parse_coeff(term.get("coeff"), "%s.result[%d]" % (where, t))
        products[x, y] = GradedVector(res)
    return finite_table(d["name"], kind, ev, od, products)


def load_spec(path) -> AlgebraTable:
    path = Path(path)
    try:
        d = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SpecError("%s: malformed JSON at line %d: %s" % (path, e.lineno, e.msg)) from None
    return parse_spec(d, str(path))


def module_dict(M: ModuleSpec) -> dict:
    rho = []
    for (a, b), r in sorted(M.rho.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key())):
        if r:
            rho.append({"algebra_label": str(a), "module_label": str(b), "result": _vec_to_json(r)})
    return {"algebra": M.algebra.name, "name": M.name,
            "module_basis": [{"label": str(l), "parity": "odd" if l.odd else "even"} for l in M.basis],
            "rho": rho}


def save_module(M: ModuleSpec, path):
    Path(path).write_text(json.dumps(module_dict(M), indent=2) + "\n", encoding="utf-8")


def parse_module(d: dict, A: AlgebraTable, source="<module>") -> ModuleSpec:
    ev, od = [], []
    for k, item in enumerate(d.get("module_basis", [])):
        par = item.get("parity")
        if par not in ("even", "odd"):
            raise SpecError("%s: module_basis[%d].parity must be even or odd" % (source, k))
        (od if par == "odd" else ev).append(parse_label(item["label"], par == "odd"))
    mlabels = {str(l): l for l in ev + od}
    alabels = {str(l): l for l in A.basis}
    rho = {}
    for k, entry in enumerate(d.get("rho", [])):
        where = "%s: rho[%d]" % (source, k)
        a = alabels.get(entry.get("algebra_label"))
        b = mlabels.get(entry.get("module_label"))
        if a is None or b is None:
            raise SpecError("%s references an undeclared label" % where)
        res = {}
        for term in entry.get("result", []):
            z = mlabels.get(term.get("basis"))
            if z is None:
                raise SpecError("%s result uses undeclared module label %r" % (where, term.get("basis")))
            res[z] = res.get(z, 0) + _parse_coeff(term.get("coeff"), where)
        rho[a, b] = GradedVector(res)
    M = ModuleSpec(A, d.get("name", "module"), ev, od, rho)
    bad = M.check_parity()
    if bad:
        raise SpecError("%s: rho does not preserve parity at %s" % (source, bad[0]))
    return M


def load_module(path, A: AlgebraTable) -> ModuleSpec:
    path = Path(path)
    try:
        d = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SpecError("%s: malformed JSON at line %d: %s" % (path, e.lineno, e.msg)) from None
    return parse_module(d, A, str(path))
