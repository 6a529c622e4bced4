from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gfc.characteristic import delta
from gfc.complex import AlgebraVariant, enumerate_profiles
from gfc.invariants import (IrrepProfile, action_equations, character_dim_oracle, gid,
                            invariant_basis, invariant_dim, tensor_to_cochain, wedge_basis,
                            wedge_count, wedge_product, _wedges_of_weight)
from gfc.poisson import Monomial

P = IrrepProfile.parse


def _proportional(a, b):
    if set(a) != set(b):
        return False
    J = next(iter(a))
    r = a[J] / b[J]
    return all(a[K] == r * b[K] for K in a)


@pytest.mark.parametrize("label,dim", [
    ("3^2", 1), ("3", 0), ("3^2 5^2", 2), ("4^2 6", 1), ("7^2", 1), ("1^2", 1),
    ("1 3", 0), ("3^4", 1), ("3 4 5 6", 4), ("3^2 4^2 6", 3), ("3^2 4 5^2", 4),
    ("3 4^3 5", 2), ("4^5", 1),
])
def test_known_dimensions(label, dim):
    assert invariant_dim(P(label)) == dim


@pytest.mark.parametrize("label,count", [("3^2", 6), ("3^2 5^2", 90), ("7^2", 28)])
def test_wedge_counts(label, count):
    assert wedge_count(P(label)) == count == len(wedge_basis(P(label)))


def test_profile_parse_and_format():
    p = P("(3^2 4 5^2)")
    assert str(p) == "3^2 4 5^2"
    assert p.label() == "(3^2 4 5^2)"
    assert p.degree == 5 and p.weight == 10 and p.sequence == (3, 3, 4, 5, 5)
    assert not P("3^5").is_valid()
    assert invariant_dim(P("3^5")) == 0


def test_invariant_dim_matches_character_oracle_small():
    # the exhaustive sweep (degree <= 8, weight <= 16) lives in the acceptance suite
    for w in range(0, 11):
        for p in enumerate_profiles(AlgebraVariant.HAM0, w):
            assert invariant_dim(p) == character_dim_oracle(p), p
    for w in range(-2, 7):
        for p in enumerate_profiles(AlgebraVariant.HAM, w):
            assert invariant_dim(p) == character_dim_oracle(p), p


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.integers(1, 8), st.integers(1, 3), min_size=1, max_size=3))
def test_random_profiles_match_oracle(slots):
    p = IrrepProfile(tuple(slots.items()))
    if wedge_count(p) > 3000:
        return
    assert invariant_dim(p) == character_dim_oracle(p)


@pytest.mark.parametrize("label", ["3^2", "3^2 5^2", "4^2 6", "3 4 5 6", "3^2 4 5^2"])
def test_basis_annihilated_by_e_and_f(label):
    p = P(label)
    basis = invariant_basis(p)
    zero = _wedges_of_weight(p, 0)
    unknowns = {J: c for c, J in enumerate(zero)}
    for name in ("e", "f"):
        for row in action_equations(p, name, unknowns):
            for v in basis.vectors:
                assert sum(c * v.get(zero[j], 0) for j, c in row.items()) == 0


def test_basis_is_reduced_echelon():
    basis = invariant_basis(P("3 4 5 6"))
    piv = basis.pivots
    assert list(piv) == sorted(piv)
    for i, v in enumerate(basis.vectors):
        assert v[piv[i]] == 1
        assert all(piv[j] not in v for j in range(len(piv)) if j != i)


def test_generator_of_lambda2_s3_three_ways():
    (v,) = invariant_basis(P("3^2")).vectors
    # (1) dual of the tensor x^3 ^ y^3 - 3 x^2y ^ xy^2
    tensor = tensor_to_cochain({
        (Monomial((3, 0)), Monomial((0, 3))): Fraction(1),
        (Monomial((2, 1)), Monomial((1, 2))): Fraction(-3),
    })
    assert tensor == v
    assert v == {(gid(3, 0), gid(3, 3)): 1, (gid(3, 1), gid(3, 2)): Fraction(-1, 3)}
    # (3) -d^1_22 ^ d^2_11 - 3 d^1_11 ^ d^2_22
    forms = {}
    for J, x in wedge_product(delta(1, 2, 2), delta(2, 1, 1)).items():
        forms[J] = forms.get(J, 0) - x
    for J, x in wedge_product(delta(1, 1, 1), delta(2, 2, 2)).items():
        forms[J] = forms.get(J, 0) - 3 * x
    forms = {J: x for J, x in forms.items() if x}
    assert _proportional(forms, v)


def test_wedge_product_graded_commutative():
    a, b = delta(1, 1), delta(2, 2, 2)
    ab, ba = wedge_product(a, b), wedge_product(b, a)
    assert ab == {J: -x for J, x in ba.items()}
    assert wedge_product(a, a) == {}


def test_exterior_power_count_formula():
    for k in range(1, 7):
        for m in range(0, k + 2):
            assert wedge_count(IrrepProfile(((k, m),))) == comb(k + 1, m)


def test_rank_count_matches_basis_length():
    for w in range(0, 11, 2):
        for p in enumerate_profiles(AlgebraVariant.HAM0, w):
            assert invariant_dim(p) == len(invariant_basis(p)), p
    for p in enumerate_profiles(AlgebraVariant.HAM, 2):
        assert invariant_dim(p) == len(invariant_basis(p)), p
