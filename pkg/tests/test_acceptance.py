"""Acceptance criteria, one test per criterion, all at tolerance 0.

Each test records its outcome; ``conftest.py`` prints one PASS/FAIL line per
criterion at the end of the pytest run, and running this file directly prints
the same lines.  Criterion 8 (geometric non-triviality and the true n -> oo
limit) is out of reach at desk scale and replaced by the checks of 6 and 7.
"""
import os
import subprocess
import sys

import pytest

from gfc import characteristic as ch
from gfc.complex import AlgebraVariant, build_slice, enumerate_profiles, slice_dimensions
from gfc.genfun import complex_euler_series, perchik_full_series, perchik_series
from gfc.invariants import character_dim_oracle, invariant_dim
from gfc.poisson import bracket_table, enumerate_monomials, poisson_bracket, sl2_action
from gfc.verify import run_suite

HAM, HAM0 = AlgebraVariant.HAM, AlgebraVariant.HAM0

RESULTS: dict[int, tuple[str, bool]] = {}
TITLES = {
    1: "table reproduction (tables 1-4)",
    2: "cohomology of ham relative to sp(2), w = -2..8",
    3: "cohomology of ham0 relative to sp(2), even w <= 10",
    4: "rank certificates and vanishing composites",
    5: "factorization eta ^ omega and gamma1 ^ omega = p1",
    6: "generating functions",
    7: "property suite",
}


def record(n, ok):
    RESULTS[n] = (TITLES[n], bool(ok))
    assert ok, f"criterion {n} failed: {TITLES[n]}"


def summary_lines():
    lines = [f"criterion {n}: {'PASS' if ok else 'FAIL'} {title}"
             for n, (title, ok) in sorted(RESULTS.items())]
    lines.append("criterion 8: EXCLUDED geometric non-triviality and the stable limit")
    return lines


def test_criterion_1_tables():
    reports = run_suite("tables")
    for r in reports:
        print(r.line())
    record(1, len(reports) >= 20 and all(r.passed for r in reports))


def test_criterion_2_ham_cohomology():
    expected = {-2: {2: 1}, 0: {0: 1, 4: 1}, 2: {}, 4: {}, 6: {}, 8: {7: 1}}
    got = {w: build_slice(HAM, w).cohomology_dims() for w in expected}
    odd = all(slice_dimensions(HAM, w) == {} for w in (-1, 1, 3, 5, 7))
    record(2, got == expected and odd)


def test_criterion_3_ham0_cohomology():
    expected = {0: {0: 1}, 2: {2: 1}, 4: {}, 6: {}, 8: {}, 10: {5: 1}}
    got = {w: build_slice(HAM0, w).cohomology_dims() for w in expected}
    acyclic8 = build_slice(HAM0, 8).cohomology_dims() == {}
    record(3, got == expected and acyclic8)


def test_criterion_4_ranks():
    s10, s8 = build_slice(HAM0, 10), build_slice(HAM, 8)
    ranks = (s10.rank(4), s10.rank(5), s8.rank(6), s8.rank(7)) == (7, 4, 9, 4)
    composites = True
    for variant, weights in ((HAM0, range(0, 11, 2)), (HAM, range(-2, 9, 2))):
        for w in weights:
            sl = build_slice(variant, w)
            for d in range(sl.max_degree - 1):
                composites &= (sl.coboundary(d + 1) @ sl.coboundary(d)).is_zero()
    record(4, ranks and composites)


def test_criterion_5_factorization():
    rep = ch.factorization_report()
    lam = ch.wedge_omega_map(build_slice(HAM0, 10), build_slice(HAM, 8))
    g = ch.gamma1_wedge_omega_vs_p1()
    ok = (all(rep["checks"].values())
          and lam.is_chain_map() and lam.is_injective()
          and g["proportional_mod_coboundaries"]
          and rep["obstruction"] is None
          and set(rep["eta"]["support_profiles"]) <= {"3^3 4 7", "3^2 4^2 6", "3^2 4 5^2"})
    record(5, ok)


def test_criterion_6_generating_functions():
    ham0 = {0: 1, 2: 1, 10: -1, 12: 1, 14: -1, 16: -1, 18: 1, 24: -3, 26: 2}
    ham = {-2: 1, 0: 2, 8: -1, 14: -1, 22: -1, 28: -1, 30: 1, 32: -1}
    ok = (perchik_series(1, 26).coefficients == ham0
          and perchik_full_series(1, 32).coefficients == ham
          and perchik_series(1, 10) == complex_euler_series(HAM0, 10))
    record(6, ok)


def _jacobi_ok(max_deg=6):
    mons = [m for k in range(max_deg + 1) for m in enumerate_monomials(1, k)]

    def br(a, b):
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                if m1.degree + m2.degree < 2:
                    continue
                basis = enumerate_monomials(1, m1.degree + m2.degree - 2)
                for i, c in poisson_bracket(m1, m2).items():
                    out[basis[i]] = out.get(basis[i], 0) + c1 * c2 * c
        return {m: c for m, c in out.items() if c}

    for f in mons:
        for g in mons:
            if f.degree + g.degree < 2:
                continue
            fg = br({f: 1}, {g: 1})
            for h in mons:
                total = {}
                for part in (br({f: 1}, br({g: 1}, {h: 1})), br({g: 1}, br({h: 1}, {f: 1})),
                             br({h: 1}, fg)):
                    for m, c in part.items():
                        total[m] = total.get(m, 0) + c
                if any(total.values()):
                    return False
    return True


def _antisymmetry_ok(max_deg=6):
    for k in range(max_deg + 1):
        for l in range(max_deg + 1):
            if k + l < 2:
                continue
            t, s = bracket_table(1, k, l), bracket_table(1, l, k)
            for i in range(k + 1):
                for j in range(l + 1):
                    if t(i, j) != {a: -b for a, b in s(j, i).items()}:
                        return False
    return True


def _sl2_ok(max_k=10):
    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
                for i in range(len(a))]

    for k in range(max_k + 1):
        A = sl2_action(k)
        e, f, h = A.e, A.f, A.h
        ef, fe = mul(e, f), mul(f, e)
        he, eh = mul(h, e), mul(e, h)
        hf, fh = mul(h, f), mul(f, h)
        n = k + 1
        for i in range(n):
            for j in range(n):
                if ef[i][j] - fe[i][j] != h[i][j]:
                    return False
                if he[i][j] - eh[i][j] != 2 * e[i][j] or hf[i][j] - fh[i][j] != -2 * f[i][j]:
                    return False
    return True


def _oracle_ok():
    profiles = [p for w in range(0, 17) for d in range(9)
                for p in enumerate_profiles(HAM0, w, d)]
    # the full algebra up to its default weight bound; w <= 16 behind GFC_SLOW
    top = 16 if os.environ.get("GFC_SLOW") else 10
    profiles += [p for w in range(-2, top + 1) for d in range(9)
                 for p in enumerate_profiles(HAM, w, d)]
    return all(invariant_dim(p) == character_dim_oracle(p) for p in profiles)


def _deterministic():
    outs = set()
    for threads in ("1", "2"):
        env = dict(os.environ, GFC_THREADS=threads)
        proc = subprocess.run([sys.executable, "-m", "gfc", "dims", "--algebra", "ham",
                               "--weight", "8", "--format", "json"],
                              capture_output=True, text=True, env=env)
        outs.add((proc.returncode, proc.stdout))
    return len(outs) == 1


def test_criterion_7_properties():
    d_squared = all((sl.coboundary(d + 1) @ sl.coboundary(d)).is_zero()
                    for variant, ws in ((HAM0, range(0, 11, 2)), (HAM, range(-2, 9, 2)))
                    for sl in [build_slice(variant, w) for w in ws]
                    for d in range(sl.max_degree - 1))
    odd = all(slice_dimensions(v, w) == {} for v in (HAM, HAM0) for w in range(1, 16, 2))
    checks = {
        "d_squared": d_squared,
        "jacobi": _jacobi_ok(),
        "antisymmetry": _antisymmetry_ok(),
        "oracle": _oracle_ok(),
        "odd_weights": odd,
        "sl2": _sl2_ok(),
        "deterministic": _deterministic(),
    }
    print(checks)
    record(7, all(checks.values()))


if __name__ == "__main__":
    code = pytest.main([__file__, "-q"])
    sys.exit(code)
