from fractions import Fraction

import pytest

from gfc import characteristic as ch
from gfc.complex import AlgebraVariant, build_slice
from gfc.invariants import IrrepProfile, gid

HAM, HAM0 = AlgebraVariant.HAM, AlgebraVariant.HAM0


def test_tautological_forms_on_quadratics():
    # X_H = -H_y d/dx + H_x d/dy; for H = xy, f_1 = -x and f_2 = y
    xy = (1, 1)
    assert ch.TautologicalForm(1, (1,)).evaluate(xy) == 1   # (-1)^1 * d(-x)/dx
    assert ch.TautologicalForm(2, (2,)).evaluate(xy) == -1
    assert ch.TautologicalForm(1, (2,)).evaluate(xy) == 0
    assert ch.delta(1) == {(gid(1, 1),): -1}  # f_1 = -H_y, H = y
    assert ch.delta(2) == {(gid(1, 0),): 1}   # f_2 = H_x, H = x


def test_tautological_form_rejects_bad_index():
    with pytest.raises(ValueError):
        ch.TautologicalForm(3)


def test_omega_is_the_symplectic_form():
    om = ch.omega_cochain()
    # omega(x, y) = 1 on the degree-1 wedge (x, y)
    assert om == {(gid(1, 0), gid(1, 1)): 1}
    c = ch.build_omega().cochain
    assert c.degree == 2 and c.weight == -2
    assert ch.is_closed(build_slice(HAM, -2), c)
    assert not ch.is_exact(build_slice(HAM, -2), c)


def test_curvature_entries_are_two_forms():
    om = ch.curvature()
    assert set(om) == {(1, 1), (1, 2), (2, 1), (2, 2)}
    assert all(len(J) == 2 for v in om.values() for J in v)


def test_p1_closed_non_exact_and_invariant():
    sl = build_slice(HAM, 0)
    p1 = ch.build_p1().cochain
    assert ch.is_closed(sl, p1) and not ch.is_exact(sl, p1)
    # coordinates() raises unless the cochain lies in the invariant span
    sl.part(4).coordinates(ch.p1_cochain())


def test_gamma1_wedge_omega_spans_p1():
    r = ch.gamma1_wedge_omega_vs_p1()
    assert r["proportional_mod_coboundaries"]
    assert r["ratio"] == 1


def test_wedge_omega_map_is_injective_chain_map():
    lam = ch.wedge_omega_map(build_slice(HAM0, 10), build_slice(HAM, 8))
    assert lam.is_chain_map()
    assert lam.is_injective()
    for d in sorted(lam.matrices)[:-1]:
        assert lam.chain_map_defect(d).is_zero()


def test_wedge_omega_requires_ham0_source():
    with pytest.raises(ValueError):
        ch.wedge_omega_map(build_slice(HAM, 0))


@pytest.mark.parametrize("w", [0, 2, 10])
def test_iso_in_cohomology(w):
    r = ch.verify_iso_in_cohomology(w)
    assert r["iso"] and r["h_source"] == r["h_target"] == 1


def test_eta_support_and_coefficients():
    res = ch.extract_eta()
    assert res.obstruction is None
    assert all(res.checks.values())
    assert set(res.support_profiles) <= set(ch.ETA_SUPPORT)
    labels = build_slice(HAM0, 10).part(5).labels
    coeffs = {(str(labels[i][0]), labels[i][1]): x
              for i, x in enumerate(res.eta.cochain.coords) if x}
    assert coeffs == {
        ("3^2 4^2 6", 2): 1,
        ("3^2 4 5^2", 1): Fraction(-1, 10),
        ("3^2 4 5^2", 2): -1,
        ("3^2 4 5^2", 3): Fraction(1, 5),
    }
    assert res.gkf.degree == 7 and res.gkf.weight == 8


def test_reduce_to_support_reports_impossible_shape():
    sl = build_slice(HAM0, 10)
    (z,) = ch.cohomology_representatives(sl, 5)
    # a single profile cannot carry the class
    assert ch.reduce_to_support(sl, 5, z, [IrrepProfile.parse("4^5")]) is None


def test_factorization_report_json_shape():
    rep = ch.factorization_report()
    assert rep["eta"]["degree"] == 5 and rep["gkf"]["degree"] == 7
    assert rep["obstruction"] is None
    assert all(rep["checks"].values())
    assert set(rep["eta"]["support_profiles"]) <= {"3^3 4 7", "3^2 4^2 6", "3^2 4 5^2"}
