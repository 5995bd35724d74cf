from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superquad.errors import NotHomogeneous
from superquad.spaces import (
    GradedBilinearForm,
    GradedLinearMap,
    SuperSpace,
    apply_p_delta,
    check_form_degree,
    dual_space,
    p_delta_dual,
    parity_shift,
    parity_shift_map,
)

parities_st = st.lists(st.integers(0, 1), min_size=0, max_size=6)


def space(parities, prefix="v"):
    return SuperSpace(tuple((f"{prefix}{i}", p) for i, p in enumerate(parities)))


def test_parity_shift_flips():
    v = space([0, 0, 1])
    assert parity_shift(v).parities == (1, 1, 0)


@given(parities_st)
def test_parity_shift_involution(ps):
    v = space(ps)
    assert parity_shift(parity_shift(v)) == v


@given(parities_st)
def test_parity_shift_swaps_dimensions(ps):
    v = space(ps)
    assert parity_shift(v).dim_even == v.dim_odd
    assert parity_shift(v).dim_odd == v.dim_even


def test_apply_p_delta():
    v = space([0, 1])
    assert apply_p_delta(0, v) == v
    assert apply_p_delta(1, v).parities == (1, 0)
    empty = space([])
    assert apply_p_delta(1, empty) == empty


def test_normalized_even_first():
    v = space([1, 0, 1, 0])
    n = v.normalized()
    assert n.parities == (0, 0, 1, 1)
    assert n.normalized() == n


def test_unique_labels_enforced():
    with pytest.raises(ValueError):
        SuperSpace((("x", 0), ("x", 1)))


def test_parity_shift_map_identity():
    v = space([0, 1])
    t = GradedLinearMap.identity(v)
    p = parity_shift_map(t)
    assert p.source == parity_shift(v)
    assert p.target == v
    assert p.degree == 1
    assert p.matrix == t.matrix


def test_parity_shift_map_zero_and_double():
    v = space([0, 1, 1])
    z = GradedLinearMap.zero(v, v, 1)
    p = parity_shift_map(z)
    assert p.is_zero() and p.source.parities == (1, 0, 0)
    # a degree-1 map comes back after two shifts
    t = GradedLinearMap(v, v, 1, ((0, 1, 1), (1, 0, 0), (1, 0, 0)))
    again = parity_shift_map(parity_shift_map(t))
    assert again == t


def test_parity_shift_map_pointwise():
    # P(T)(P(v)) = T(v) on every basis vector: same columns
    v = space([0, 0, 1])
    t = GradedLinearMap(v, v, 0, ((1, 2, 0), (3, 4, 0), (0, 0, 5)))
    p = parity_shift_map(t)
    for j in range(v.dim):
        assert p.column(j) == t.column(j)


def test_dual_space():
    v = space([0, 1])
    assert dual_space(v).parities == (0, 1)
    assert dual_space(space([])).dim == 0
    # P(V*) = (P(V))* as spaces
    assert apply_p_delta(1, dual_space(v)) == dual_space(apply_p_delta(1, v))


def test_p_delta_dual_labels():
    v = space([0, 1], prefix="x")
    assert p_delta_dual(v, 0).basis == (("x0*", 0), ("x1*", 1))
    assert p_delta_dual(v, 1).basis == (("P(x0)*", 1), ("P(x1)*", 0))


def test_check_form_degree_examples():
    v = space([0, 1])
    odd = GradedBilinearForm(v, 1, ((0, 1), (1, 0)))
    assert check_form_degree(odd) == 1
    even = GradedBilinearForm(v, 0, ((1, 0), (0, 1)))
    assert check_form_degree(even) == 0
    mixed = GradedBilinearForm(v, 0, ((1, 1), (1, 1)))
    with pytest.raises(NotHomogeneous):
        check_form_degree(mixed)
    zero = GradedBilinearForm(v, 1, ((0, 0), (0, 0)))
    assert check_form_degree(zero) == 1  # both patterns hold; report declared


def test_homogeneity_enforced_on_maps():
    v = space([0, 1])
    with pytest.raises(NotHomogeneous):
        GradedLinearMap(v, v, 0, ((0, 1), (0, 0)))


def test_supersymmetry_checker():
    v = space([1, 1])
    anti = GradedBilinearForm(v, 0, ((0, 1), (-1, 0)))
    assert anti.check_supersymmetry() is None
    sym = GradedBilinearForm(v, 0, ((0, 1), (1, 0)))
    bad = sym.check_supersymmetry()
    assert bad is not None and bad.equation == "super-symmetry"


fractions_st = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@given(fractions_st, fractions_st, fractions_st)
def test_scalar_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + (-a) == 0


@given(fractions_st.filter(lambda x: x != 0))
def test_scalar_inverse_exact(a):
    inv = Fraction(1) / a
    assert a * inv == 1
    assert inv.denominator > 0


@given(fractions_st)
def test_scalar_canonical_form(a):
    from math import gcd
    assert a.denominator > 0
    assert gcd(abs(a.numerator), a.denominator) == 1
