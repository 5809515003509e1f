"""The eleven acceptance criteria, each with its time limit.

Every criterion records one PASS/FAIL line (printed in the pytest terminal
summary, or directly when run as a script).
"""

import json
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest

from antialg import associator as asc, catalog, cohomology as H, derivations as der
from antialg import geometry as G, representations as R, superization as sup
from antialg.graded import check_antialgebra, check_superalgebra

RESULTS = []
ROOT = Path(__file__).resolve().parents[1]


@contextmanager
def criterion(num, title, limit):
    t0 = time.perf_counter()
    status = "FAIL"
    note = ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        if limit is not None and elapsed >= limit:
            note = " (too slow)"
            raise AssertionError("criterion %d took %.2fs, limit %ss" % (num, elapsed, limit))
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - t0
        lim = "" if limit is None else " / %ss" % limit
        line = "[%s] %2d %s (%.2fs%s)%s" % (status, num, title, elapsed, lim, note)
        RESULTS.append(line)
        print(line)


def test_01_axioms():
    with criterion(1, "axiom suites: asl2, ah1(0,1,-2), AK(1) window 6", 2):
        for name in ("asl2", "ah1:0", "ah1:1", "ah1:-2"):
            rep = check_antialgebra(catalog.by_name(name))
            assert rep.ok and len(rep.checked) == 5, name
        rep = check_antialgebra(catalog.build_AK1(6))
        assert rep.ok and len(rep.checked) == 5


def test_02_mutations():
    with criterion(2, "each identity has a mutation failing exactly it", 1):
        cat = catalog.mutation_catalog()
        assert sorted(cat) == sorted(["SkewP", "AssCommT", "CacT", "ICommT", "Jack"])
        for ident, (A, witness) in cat.items():
            rep = check_antialgebra(A)
            assert rep.failed() == [ident]
            assert witness in rep.witnesses(ident)


def test_03_geometric_origin():
    with criterion(3, "Taylor basis reproduces AK(1) for |n|,|i| <= 5; unique convention", 5):
        wins, scores = G.calibrate_geometry(5)
        assert wins == [G.CALIBRATED]
        rep = G.verify_taylor(5, wins[0])
        assert rep.ok and rep.checked["GhosRel"] == (11 + 10) ** 2


def test_04_invariance():
    with criterion(4, "L_X P = L_X Lambda = 0 up to degree 4; invariants of degree <= 1 = span{P, Lambda}", 10):
        assert G.check_invariance(G.POISSON, max_degree=4).ok
        assert G.check_invariance(G.LAMBDA, max_degree=4).ok
        basis = G.invariant_bivector_space(1)
        assert len(basis) == 2
        assert G.in_span(basis, [G.POISSON, G.LAMBDA])


def test_05_derivations():
    with criterion(5, "Der(asl2) = 3|2 = osp(1|2); K(1) acts by derivations on AK(1) window 5", 5):
        Der, ops = der.derivation_algebra(catalog.build_asl2())
        assert Der.dims == (3, 2)
        assert check_superalgebra(Der).ok
        T, rep = der.der_asl2_base_change()
        assert rep.ok and rep.info["rank"] == 5
        assert der.check_K1_action(5).ok


def test_06_superization():
    with criterion(6, "superize: asl2 -> 3|2, ah1(1) -> 2|2 (oracle agrees), well-defined", 2):
        T, S, wd = sup.superize(catalog.build_asl2())
        assert T.dims == (3, 2) and check_superalgebra(T).ok and wd.ok
        A = catalog.build_ah1(1)
        T, S, wd = sup.superize(A)
        assert T.dims == (2, 2) and check_superalgebra(T).ok and wd.ok
        assert sup.quotient_rank_oracle(A) == 2


def test_07_representations():
    with criterion(7, "FRep calibration unique; reps, extension, Casimir, finite certificate", 10):
        canon, wins = R.canonical_FRep_constants(window=2)
        assert canon == (Fraction(1, 2), Fraction(1, 2), -1)
        rep = R.build_FRep(5, c_l=canon[0], c_e=canon[1], odd_sign=canon[2])
        assert R.check_rep(rep, columns=rep.module.interior()).ok
        small = R.frep_asl2(5)
        X, T, ext = R.extend_to_super(small)
        assert ext.ok and T.dims == (3, 2)
        assert R.check_contact_K1(3).ok
        E, A, B = R.asl2_operators(small)
        cols = small.module.interior()
        rel = R.check_asl2_rep(E, A, B, cols)
        assert rel.ok and rel.info["holds_on"]
        assert R.casimir_check(E, A, B, cols).ok
        total = 0
        for d0 in range(4):
            for d1 in range(4):
                found, certs, _ = R.fuzz_systemrep2(d0, d1, trials=8, seed=d0 * 4 + d1)
                assert all(c.holds for c in certs)
                assert all(E.is_zero() and A.is_zero() and B.is_zero() for E, A, B in found)
                total += len(found)
        assert total > 0


def test_08_associator():
    with criterion(8, "skew equivalence for asl2, ah1, AK(1) window 4; targeted pairings", 3):
        for A in (catalog.build_asl2(), catalog.build_ah1(0), catalog.build_ah1(1), catalog.build_ah1(-2),
                  catalog.build_AK1(4)):
            assert asc.skew_equivalence(asc.bracket_to_m(A)).ok, A.name
        for split, axiom in asc.PAIRED_AXIOM.items():
            A, witness = catalog.mutation_catalog()[axiom]
            rep = asc.skew_equivalence(asc.bracket_to_m(A))
            assert rep.failed() == sorted([split, axiom])
            assert set(rep.witnesses(split)) == set(rep.witnesses(axiom))


def test_09_cohomology():
    with criterion(9, "delta^2 = 0 (asl2 trivial/adjoint/coadjoint, k <= 3); bicomplex; H^1 = H^2 = 0", 15):
        A = catalog.build_asl2()
        for mod in ("trivial", "adjoint", "coadjoint"):
            assert H.verify_d2(catalog.module_by_name(A, mod), 3).ok, mod
        assert H.bicomplex_check(A, 3).ok
        M = catalog.trivial_module(A)
        assert H.cohomology_dims(M, 1) == (0, 0)
        assert H.cohomology_dims(M, 2) == (0, 0)


def test_10_gamma():
    with criterion(10, "delta gamma = 0 on AK(1) window 6; no-solution certificate", 5):
        r = H.gamma_cocycle(6)
        assert r["defects"] == [] and r["checked"] > 0
        cert = r["certificate"]
        assert cert["solvable"] is False and cert["equations"] > cert["unknowns"]


def test_11_determinism(tmp_path):
    with criterion(11, "byte-identical JSON reports across two runs", None):
        script = ROOT / "scripts" / "json_reports.py"
        outs = []
        for k in range(2):
            p = tmp_path / ("run%d.json" % k)
            subprocess.run([sys.executable, str(script), str(p)], check=True, cwd=str(ROOT))
            outs.append(p.read_bytes())
        assert outs[0] == outs[1]
        assert json.loads(outs[0])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
