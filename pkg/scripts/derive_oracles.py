"""Independent oracle for the frozen values in the test suite.

Uses sympy and hand-written structure constants only (nothing from antialg),
so agreement with the package is a genuine cross-check. Prints JSON.

    python3 scripts/derive_oracles.py
"""

import itertools
import json

import sympy as sp

half = sp.Rational(1, 2)


def asl2():
    # basis order: eps | a, b   (parities 0 | 1 1)
    par = [0, 1, 1]
    T = {}
    T[0, 0] = {0: 1}
    T[0, 1] = T[1, 0] = {1: half}
    T[0, 2] = T[2, 0] = {2: half}
    T[1, 2] = {0: half}
    T[2, 1] = {0: -half}
    return par, T


def ah1(kappa):
    par = [0, 1, 1]
    T = {}
    if kappa:
        T[0, 1] = T[1, 0] = {2: kappa}
    T[1, 2] = {0: half}
    T[2, 1] = {0: -half}
    return par, T


def mul(T, n, u, v):
    out = [0] * n
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            for k, c in T.get((i, j), {}).items():
                out[k] += a * b * c
    return out


def der_dims(par, T, odd_sign=1):
    """Solve D]x,y[ = ]Dx,y[ + s(-1)^{pD px} ]x,Dy[ with symbolic matrices."""
    n = len(par)
    dims = []
    for pD in (0, 1):
        syms = {}
        for i in range(n):
            for j in range(n):
                if par[i] == (par[j] + pD) % 2:
                    syms[i, j] = sp.Symbol("d_%d_%d" % (i, j))

        def D(v):
            out = [0] * n
            for (i, j), s in syms.items():
                out[i] += s * v[j]
            return out

        eqs = []
        for x in range(n):
            for y in range(n):
                ex = [int(k == x) for k in range(n)]
                ey = [int(k == y) for k in range(n)]
                s = (-1) ** (pD * par[x]) * (odd_sign if pD else 1)
                lhs = D(mul(T, n, ex, ey))
                r1 = mul(T, n, D(ex), ey)
                r2 = mul(T, n, ex, D(ey))
                eqs += [sp.expand(lhs[k] - r1[k] - s * r2[k]) for k in range(n)]
        eqs = [e for e in eqs if e != 0]
        unknowns = list(syms.values())
        if eqs:
            M = sp.Matrix([[sp.diff(e, u) for u in unknowns] for e in eqs])
            dims.append(len(unknowns) - M.rank())
        else:
            dims.append(len(unknowns))
    return dims


def sym_quotient_dim(par, T):
    """dim S^2(odd) / span{ ]alpha,a[.b - a.]alpha,b[ } via sympy on the symmetric square."""
    odd_ix = [i for i, p in enumerate(par) if p]
    ev_ix = [i for i, p in enumerate(par) if not p]
    pairs = [(a, b) for k, a in enumerate(odd_ix) for b in odd_ix[k:]]
    pos = {p: k for k, p in enumerate(pairs)}

    def sym(u, v):
        row = [0] * len(pairs)
        for a in odd_ix:
            for b in odd_ix:
                c = u[a] * v[b]
                if c:
                    row[pos[tuple(sorted((a, b)))]] += c
        return row

    rels = []
    n = len(par)
    for al in ev_ix:
        e = [int(k == al) for k in range(n)]
        for a in odd_ix:
            for b in odd_ix:
                ea = [int(k == a) for k in range(n)]
                eb = [int(k == b) for k in range(n)]
                r1 = sym(mul(T, n, e, ea), eb)
                r2 = sym(ea, mul(T, n, e, eb))
                rels.append([x - y for x, y in zip(r1, r2)])
    r = sp.Matrix(rels).rank() if rels else 0
    return len(pairs) - r


def axiom_defects(par, T):
    """Number of failing basis instances per identity family."""
    n = len(par)
    V = [i for i in range(n) if not par[i]]
    W = [i for i in range(n) if par[i]]
    e = lambda i: [int(k == i) for k in range(n)]
    P = lambda u, v: mul(T, n, u, v)
    out = {"SkewP": 0, "AssCommT": 0, "CacT": 0, "ICommT": 0, "Jack": 0}
    for x in range(n):
        for y in range(n):
            s = (-1) ** (par[x] * par[y])
            if any(a - s * b for a, b in zip(P(e(x), e(y)), P(e(y), e(x)))):
                out["SkewP"] += 1
    for x1, x2, x3 in itertools.product(V, V, V):
        if any(a - b for a, b in zip(P(e(x1), P(e(x2), e(x3))), P(P(e(x1), e(x2)), e(x3)))):
            out["AssCommT"] += 1
    for x1, x2, y in itertools.product(V, V, W):
        if any(a - half * b for a, b in zip(P(e(x1), P(e(x2), e(y))), P(P(e(x1), e(x2)), e(y)))):
            out["CacT"] += 1
    for x, y1, y2 in itertools.product(V, W, W):
        l = P(e(x), P(e(y1), e(y2)))
        r = [a + b for a, b in zip(P(P(e(x), e(y1)), e(y2)), P(e(y1), P(e(x), e(y2))))]
        if any(a - b for a, b in zip(l, r)):
            out["ICommT"] += 1
    for y1, y2, y3 in itertools.product(W, W, W):
        t = [a + b + c for a, b, c in zip(P(e(y1), P(e(y2), e(y3))), P(e(y2), P(e(y3), e(y1))),
                                          P(e(y3), P(e(y1), e(y2))))]
        if any(t):
            out["Jack"] += 1
    return out


def main():
    out = {}
    par, T = asl2()
    out["der_asl2"] = der_dims(par, T)
    out["der_asl2_odd_sign_minus"] = der_dims(par, T, -1)
    for k in (0, 1, -2):
        p, t = ah1(sp.Integer(k))
        out["der_ah1_%d" % k] = der_dims(p, t)
        out["sym_quotient_ah1_%d" % k] = sym_quotient_dim(p, t)
    out["sym_quotient_asl2"] = sym_quotient_dim(par, T)
    # asl2 with ]eps,a[ = a (both orientations)
    Tb = dict(T)
    Tb[0, 1] = Tb[1, 0] = {1: 1}
    out["broken_asl2_failures"] = axiom_defects(par, Tb)
    out["asl2_failures"] = axiom_defects(par, T)
    print(json.dumps(out, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
