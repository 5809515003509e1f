"""Super-Laurent calculus on R^{2|1} with coordinates p, q (even) and tau (odd).

Functions are finite sums c p^a q^b tau^e with integer a, b and e in {0, 1}.
Bivectors are lists of terms c U^V with U, V among the coordinate
directions; the pairing <U^V, dF^dG> is one of a small family of sign
conventions, chosen by matching the Taylor basis against AK(1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .catalog import build_AK1, build_asl2
from .graded import AlgebraTable, GradedVector, Label, Report, sign
from .linalg import RatMatrix, as_rational, kernel_basis

HALF = Fraction(1, 2)
DIRS = ("p", "q", "tau")
DIR_PARITY = {"p": 0, "q": 0, "tau": 1}


class SuperFunction:
    """Immutable map (a, b, e) -> coefficient, zero terms dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                a, b, e = k
                if e not in (0, 1):
                    raise ValueError("tau exponent must be 0 or 1")
                clean[int(a), int(b), e] = c
        self.terms = clean

    @classmethod
    def mono(cls, a=0, b=0, e=0, c=1):
        return cls({(a, b, e): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not other:
            return not self.terms
        return isinstance(other, SuperFunction) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return SuperFunction(t)

    def __sub__(self, other):
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, other):
        if isinstance(other, SuperFunction):
            t = {}
            for (a, b, e), c in self.terms.items():
                for (a2, b2, e2), c2 in other.terms.items():
                    if e and e2:
                        continue
                    k = (a + a2, b + b2, e + e2)
                    t[k] = t.get(k, 0) + c * c2
            return SuperFunction(t)
        c = as_rational(other)
        return SuperFunction({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def parity(self):
        """0, 1, or None for mixed (zero counts as even)."""
        ps = {e for (_, _, e) in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def d(self, direction):
        """Left partial derivative."""
        t = {}
        for (a, b, e), c in self.terms.items():
            if direction == "p" and a:
                t[a - 1, b, e] = t.get((a - 1, b, e), 0) + c * a
            elif direction == "q" and b:
                t[a, b - 1, e] = t.get((a, b - 1, e), 0) + c * b
            elif direction == "tau" and e:
                t[a, b, 0] = t.get((a, b, 0), 0) + c
        return SuperFunction(t)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b, e), c in sorted(self.terms.items(), key=lambda t: (t[0][2], t[0][0], t[0][1])):
            m = []
            if a:
                m.append("p" if a == 1 else "p^%d" % a)
            if b:
                m.append("q" if b == 1 else "q^%d" % b)
            if e:
                m.append("τ")
            parts.append(" ".join([str(c)] + m))
        return " + ".join(parts)

    __repr__ = __str__


P_ = SuperFunction.mono(1, 0, 0)
Q_ = SuperFunction.mono(0, 1, 0)
TAU = SuperFunction.mono(0, 0, 1)
ONE = SuperFunction.mono()
COORD = {"p": P_, "q": Q_, "tau": TAU}


def euler_degree(F: SuperFunction):
    """lambda with E(F) = lambda F, or "mixed"."""
    degs = {a + b + e for (a, b, e) in F.terms}
    if len(degs) == 1:
        return Fraction(degs.pop())
    return "mixed" if degs else None


@dataclass
class SuperVectorField:
    """X = f_p d/dp + f_q d/dq + f_tau d/dtau."""

    coeffs: dict
    parity: int = 0

    def __call__(self, F: SuperFunction) -> SuperFunction:
        acc = SuperFunction()
        for d, f in self.coeffs.items():
            acc = acc + f * F.d(d)
        return acc

    def parity_ok(self):
        for d, f in self.coeffs.items():
            pf = f.parity()
            if f and (pf is None or (pf + DIR_PARITY[d]) % 2 != self.parity):
                return False
        return True


EULER = SuperVectorField({"p": P_, "q": Q_, "tau": TAU})


@dataclass(frozen=True)
class Convention:
    """<c U^V, dF^dG> = sigma c [U(F)V(G) s1 - (-1)^{p(U)p(V)} V(F)U(G) s2].

    ``order="YX"`` swaps the roles of U and V; with ``koszul`` the signs
    are s1 = (-1)^{p(V)p(F)}, s2 = (-1)^{p(U)p(F)} (otherwise both are 1).
    """

    sigma: int = 1
    order: str = "YX"
    koszul: bool = True

    def to_json(self):
        return {"sigma": self.sigma, "order": self.order, "koszul": self.koszul}


CONVENTIONS = tuple(Convention(s, o, k) for s in (1, -1) for o in ("XY", "YX") for k in (False, True))
CALIBRATED = Convention(1, "YX", True)


class Bivector:
    """Terms (coefficient function, U, V)."""

    def __init__(self, terms, name=""):
        self.terms = [(f, u, v) for f, u, v in terms if f]
        self.name = name

    def __add__(self, other):
        return Bivector(self.terms + other.terms)

    def __mul__(self, c):
        return Bivector([(f * c, u, v) for f, u, v in self.terms])

    def parity(self):
        ps = {(f.parity() + DIR_PARITY[u] + DIR_PARITY[v]) % 2 for f, u, v in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def pair(self, F: SuperFunction, G: SuperFunction, conv: Convention = CALIBRATED) -> SuperFunction:
        pF = F.parity() or 0
        acc = SuperFunction()
        for f, u, v in self.terms:
            if conv.order == "YX":
                u, v = v, u
            pu, pv = DIR_PARITY[u], DIR_PARITY[v]
            s1 = sign(pv * pF) if conv.koszul else 1
            s2 = sign(pu * pF) if conv.koszul else 1
            t = F.d(u) * G.d(v) * s1 - F.d(v) * G.d(u) * (sign(pu * pv) * s2)
            acc = acc + f * t * conv.sigma
        return acc


# the two invariant bivectors
POISSON = Bivector([(ONE, "p", "q"), (ONE * HALF, "tau", "tau")], "P")
# d_tau ^ E + tau d_p ^ d_q, with coefficients of E pulled in front
LAMBDA = Bivector([(P_, "tau", "p"), (Q_, "tau", "q"), (TAU, "tau", "tau"), (TAU, "p", "q")], "Lambda")


def anti_bracket(F: SuperFunction, G: SuperFunction, conv: Convention = CALIBRATED) -> SuperFunction:
    """]F,G[ = (-1)^{p(F)}/2 <Lambda, dF^dG>, F homogeneous."""
    pF = F.parity()
    if pF is None:
        raise ValueError("anti_bracket needs a homogeneous first argument")
    return LAMBDA.pair(F, G, conv) * (Fraction(sign(pF)) / 2)


def poisson_bracket(F: SuperFunction, G: SuperFunction, conv: Convention = CALIBRATED) -> SuperFunction:
    return POISSON.pair(F, G, conv)


def hamiltonian_field(h: SuperFunction, conv: Convention = CALIBRATED) -> SuperVectorField:
    """X_h(G) = {h, G}; the coefficients are the brackets with the coordinates."""
    ph = h.parity()
    if ph is None:
        raise ValueError("hamiltonian must be homogeneous")
    return SuperVectorField({d: poisson_bracket(h, COORD[d], conv) for d in DIRS}, ph)


# Taylor basis of F_1

def taylor(lab: Label) -> SuperFunction:
    """l_i = p (q/p)^{i+1/2}, e_n = tau (q/p)^n."""
    if lab.family == "l":
        k = lab.index + HALF
        return SuperFunction.mono(int(1 - k), int(k), 0)
    if lab.family == "e":
        n = lab.index
        return SuperFunction.mono(int(-n), int(n), 1)
    raise KeyError(lab)


def taylor_vector(v: GradedVector) -> SuperFunction:
    acc = SuperFunction()
    for lab, c in v.terms.items():
        acc = acc + taylor(lab) * c
    return acc


def verify_taylor(window=5, conv: Convention = CALIBRATED, odd_sign=1) -> Report:
    """]taylor(x), taylor(y)[ = taylor(]x,y[) over AK(1) window pairs."""
    A = build_AK1(window, odd_sign)
    rep = Report("Taylor basis vs AK(1)", A.window)
    fs = {lab: taylor(lab) for lab in A.basis}
    for x, y in itertools.product(A.basis, A.basis):
        d = anti_bracket(fs[x], fs[y], conv) - taylor_vector(A.mul(x, y))
        rep.add("GhosRel", (x, y), str(d) if d else None)
    return rep


def calibrate_geometry(window=5, conventions=CONVENTIONS, invariance_degree=2):
    """Conventions under which the Taylor basis reproduces AK(1) and Lambda
    is osp(1|2)-invariant.

    The Taylor test alone leaves two conventions that agree on F_1 and differ
    on odd functions of other degrees; invariance of Lambda separates them.
    Returns (winners, {convention: (taylor ok, invariance ok)}).
    """
    scores = {}
    for c in conventions:
        t = verify_taylor(window, c).ok
        inv = t and check_invariance(LAMBDA, max_degree=invariance_degree, conv=c).ok
        scores[c] = (t, inv)
    return [c for c, (t, inv) in scores.items() if t and inv], scores


def calibrated_convention(window=5) -> Convention:
    wins, _ = calibrate_geometry(window)
    if len(wins) != 1:
        raise ValueError("geometry calibration is not unique: %s" % (wins,))
    return wins[0]


def linear_asl2(conv: Convention = CALIBRATED, values=(1, -1, 2, -2, HALF, -HALF)) -> Report:
    """Identify (tau, p, q) with (eps, a, b) up to scalars so that the asl(2) table holds."""
    A = build_asl2()
    eps, a, b = A.basis
    rep = Report("linear functions under the anti-bracket")
    table = {}
    for u, v in itertools.product((TAU, P_, Q_), repeat=2):
        table[str(u), str(v)] = str(anti_bracket(u, v, conv))
    rep.info["brackets"] = table
    found = None
    for (fa, fb), (s0, s1, s2) in itertools.product(((P_, Q_), (Q_, P_)), itertools.product(values, repeat=3)):
        img = {eps: TAU * s0, a: fa * s1, b: fb * s2}
        ok = True
        for x, y in itertools.product(A.basis, A.basis):
            rhs = SuperFunction()
            for z, c in A.mul(x, y).terms.items():
                rhs = rhs + img[z] * c
            if anti_bracket(img[x], img[y], conv) != rhs:
                ok = False
                break
        if ok:
            found = {str(k): str(v) for k, v in img.items()}
            break
    rep.info["identification"] = found
    if found is None:
        rep.add("identification", ("asl2",), "none found")
    return rep


QUADRATIC = {"p^2": P_ * P_, "q^2": Q_ * Q_, "pq": P_ * Q_, "pτ": P_ * TAU, "qτ": Q_ * TAU}


def quadratic_superalgebra(conv: Convention = CALIBRATED) -> AlgebraTable:
    """The five quadratic Hamiltonians under the Poisson bracket, as a table."""
    labels = [Label(k, None, bool(f.parity())) for k, f in QUADRATIC.items()]
    funcs = dict(zip(labels, QUADRATIC.values()))
    monos = sorted({m for f in funcs.values() for m in f.terms})
    cols = [[f.terms.get(m, 0) for m in monos] for f in funcs.values()]
    from .linalg import solve
    M = RatMatrix.from_columns(cols, len(monos))
    table = {}
    for x, y in itertools.product(labels, labels):
        r = poisson_bracket(funcs[x], funcs[y], conv)
        if any(m not in monos for m in r.terms):
            raise AssertionError("quadratics do not close: {%s,%s} = %s" % (x, y, r))
        c = solve(M, [r.terms.get(m, 0) for m in monos])
        if c is None:
            raise AssertionError("quadratics do not close: {%s,%s} = %s" % (x, y, r))
        v = GradedVector({labels[k]: x_ for k, x_ in enumerate(c) if x_})
        if v:
            table[x, y] = v
    return AlgebraTable("quadratics", "superalgebra", [l for l in labels if not l.odd],
                        [l for l in labels if l.odd], table)


def osp12_fields(conv: Convention = CALIBRATED):
    return {k: hamiltonian_field(f, conv) for k, f in QUADRATIC.items()}


# invariance

def monomials(max_degree, min_degree=0):
    out = []
    for deg in range(min_degree, max_degree + 1):
        for e in (0, 1):
            for a in range(deg - e + 1):
                b = deg - e - a
                if b >= 0:
                    out.append(SuperFunction.mono(a, b, e))
    return out


def lie_derivative_defect(X: SuperVectorField, B: Bivector, F: SuperFunction, G: SuperFunction,
                          conv: Convention = CALIBRATED) -> SuperFunction:
    """X<B,dF^dG> - <B,d(XF)^dG> - (-1)^{p(X)p(F)} <B,dF^d(XG)>, sign-corrected
    for odd X and odd B by the factor (-1)^{p(X)p(B)} on the last two terms."""
    pF = F.parity() or 0
    pB = B.parity() or 0
    s = sign(X.parity * pB)
    return (X(B.pair(F, G, conv)) - B.pair(X(F), G, conv) * s
            - B.pair(F, X(G), conv) * (s * sign(X.parity * pF)))


def check_invariance(B: Bivector, fields=None, max_degree=4, conv: Convention = CALIBRATED) -> Report:
    fields = osp12_fields(conv) if fields is None else fields
    rep = Report("invariance of %s" % (B.name or "bivector"))
    mons = monomials(max_degree)
    for name, X in fields.items():
        for F, G in itertools.product(mons, mons):
            d = lie_derivative_defect(X, B, F, G, conv)
            rep.add("L_X", (name, str(F), str(G)), str(d) if d else None)
    return rep


def bivector_basis(coeff_degree, parity=None, pairs=None):
    """Monomial-coefficient bivectors c U^V, U^V over (p,q), (p,tau), (q,tau), (tau,tau)."""
    pairs = pairs or (("p", "q"), ("p", "tau"), ("q", "tau"), ("tau", "tau"))
    out = []
    for u, v in pairs:
        for m in monomials(coeff_degree):
            B = Bivector([(m, u, v)], "%s d%s^d%s" % (m, u, v))
            if parity is None or B.parity() == parity:
                out.append(B)
    return out


def invariant_bivector_space(coeff_degree=1, parity=None, test_degree=2, pairs=None,
                             conv: Convention = CALIBRATED, fields=None):
    """Kernel of the osp(1|2) Lie-derivative defects on bivectors with
    polynomial coefficients of degree <= coeff_degree.

    Returns a list of Bivectors (one per kernel vector)."""
    basis = bivector_basis(coeff_degree, parity, pairs)
    fields = osp12_fields(conv) if fields is None else fields
    mons = monomials(test_degree)
    rows = {}
    for k, B in enumerate(basis):
        for name, X in fields.items():
            for i, (F, G) in enumerate(itertools.product(mons, mons)):
                d = lie_derivative_defect(X, B, F, G, conv)
                for m, c in d.terms.items():
                    rows.setdefault((name, i, m), {})[k] = c
    keys = sorted(rows)
    M = RatMatrix(len(keys), len(basis), {(r, k): c for r, key in enumerate(keys) for k, c in rows[key].items()})
    out = []
    for v in kernel_basis(M):
        terms = []
        for c, B in zip(v, basis):
            if c:
                terms += [(f * c, u, w) for f, u, w in B.terms]
        out.append(Bivector(terms))
    return out


def bivector_coords(B: Bivector):
    """Canonical coordinates {(U, V, monomial): c} for comparing bivectors.

    U^V with U != V is skew, so (V, U) is folded onto (U, V) in DIRS order."""
    out = {}
    for f, u, v in B.terms:
        s = 1
        if DIRS.index(u) > DIRS.index(v):
            u, v = v, u
            s = -sign(DIR_PARITY[u] * DIR_PARITY[v])
        for m, c in f.terms.items():
            k = (u, v, m)
            out[k] = out.get(k, 0) + c * s
    return {k: c for k, c in out.items() if c}


def in_span(targets, basis) -> bool:
    """Every target bivector is a combination of ``basis`` and vice versa."""
    from .linalg import rank
    keys = sorted({k for B in list(targets) + list(basis) for k in bivector_coords(B)})

    def rk(bs):
        if not bs:
            return 0
        cols = [[bivector_coords(B).get(k, 0) for k in keys] for B in bs]
        return rank(RatMatrix.from_columns(cols, len(keys)))

    r = rk(list(basis))
    return rk(list(basis) + list(targets)) == r == rk(list(targets))
