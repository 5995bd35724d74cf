import random
from fractions import Fraction

import pytest

from generators import random_heisenberg_params, random_odd_dim1_params
from superquad import linalg
from superquad.algebra import LieSuperAlgebra, QuadraticLieSuperAlgebra, check_jacobi
from superquad.catalog import (
    HeisenbergExtensionParams,
    OddExtensionParams,
    check_psi_isometry,
    default_heisenberg_params,
    default_odd_dim1_params,
    heisenberg_context,
    heisenberg_extension,
    heisenberg_target,
    odd_extension_context,
    odd_extension_dim1,
    psi_preconditions_hold,
)
from superquad.errors import InvalidParams
from superquad.extension import double_extend
from superquad.linalg import ONE, ZERO
from superquad.spaces import GradedBilinearForm, GradedLinearMap, SuperSpace

F = Fraction


def hyperbolic_pair():
    sp = SuperSpace((("e", 0), ("f", 1)))
    return QuadraticLieSuperAlgebra(
        LieSuperAlgebra.abelian(sp),
        GradedBilinearForm(sp, 1, ((0, 1), (1, 0))))


def test_odd_dim1_trivial_h():
    g = odd_extension_dim1(default_odd_dim1_params(eta=ONE))
    assert g.space.basis == (("x", 1), ("P(x)*", 0))
    assert g.bracket.vec(0, 0) == (ZERO, ONE)
    assert g.metric.matrix == ((ZERO, ONE), (ONE, ZERO))


def test_odd_dim1_eta_zero_is_abelian():
    g = odd_extension_dim1(default_odd_dim1_params(eta=ZERO))
    assert all(linalg.vec_is_zero(g.bracket.vec(i, j)) for i in range(2) for j in range(2))


def test_odd_dim1_bracket_rows_nontrivial_h():
    h = hyperbolic_pair()
    d = GradedLinearMap(h.space, h.space, 1, ((0, 2), (0, 0)))  # D(f) = 2e
    w = (F(3), ZERO)
    p = OddExtensionParams(h, d, w, F(5))
    g = odd_extension_dim1(p)
    # [x,x] = w + eta P(x)*
    assert g.bracket.vec(0, 0) == (ZERO, F(3), ZERO, F(5))
    # [x,f] = D(f) - (-1)^{|f|} B(f,w) P(x)* = 2e + 3 P(x)*
    assert g.bracket.vec(0, 2) == (ZERO, F(2), ZERO, F(3))
    # [x,e] = -(-1)^{|e|} B(e,w) P(x)* = 0 since B(e,e) = 0
    assert g.bracket.vec(0, 1) == (ZERO, ZERO, ZERO, ZERO)
    # [f,f] = B(D(f), f) P(x)* = 2 P(x)*
    assert g.bracket.vec(2, 2) == (ZERO, ZERO, ZERO, F(2))
    assert check_jacobi(g.bracket) is None


def test_odd_dim1_invalid_params():
    from superquad.catalog import default_heisenberg_params
    h4 = heisenberg_extension(default_heisenberg_params())
    zero = GradedLinearMap.zero(h4.space, h4.space, 1)
    # D^2 = 0 but ad(w) != 0: the curvature condition fails
    with pytest.raises(InvalidParams) as exc:
        odd_extension_dim1(OddExtensionParams(h4, zero, (ONE, ZERO, ZERO, ZERO), ONE))
    assert exc.value.condition == "deh1"

    # D(w) != 0 on a (2|2) hyperbolic space with an antisymmetric alpha-block
    sp = SuperSpace((("e1", 0), ("e2", 0), ("f1", 1), ("f2", 1)))
    rows = [[ZERO] * 4 for _ in range(4)]
    for i in range(2):
        rows[i][2 + i] = ONE
        rows[2 + i][i] = ONE
    h = QuadraticLieSuperAlgebra(LieSuperAlgebra.abelian(sp),
                                 GradedBilinearForm(sp, 1, tuple(tuple(r) for r in rows)))
    dmat = [[ZERO] * 4 for _ in range(4)]
    dmat[3][0] = ONE    # D(e1) = f2
    dmat[2][1] = -ONE   # D(e2) = -f1
    d = GradedLinearMap(sp, sp, 1, tuple(tuple(r) for r in dmat))
    with pytest.raises(InvalidParams) as exc:
        odd_extension_dim1(OddExtensionParams(h, d, (ONE, ZERO, ZERO, ZERO), ZERO))
    assert exc.value.condition == "deh2"

    # skewness failure: D(e) = f pairs wrongly with the metric
    h2 = hyperbolic_pair()
    dbad = GradedLinearMap(h2.space, h2.space, 1, ((0, 0), (1, 0)))
    with pytest.raises(InvalidParams) as exc:
        odd_extension_dim1(OddExtensionParams(h2, dbad, (ZERO, ZERO), ZERO))
    assert exc.value.condition == "d-skew"

    # wrong parity of D
    deven = GradedLinearMap.zero(h2.space, h2.space, 0)
    with pytest.raises(InvalidParams) as exc:
        odd_extension_dim1(OddExtensionParams(h2, deven, (ZERO, ZERO), ZERO))
    assert exc.value.condition == "d-degree"


def test_heisenberg_explicit_shape():
    g = heisenberg_extension(default_heisenberg_params())
    assert g.space.basis == (("x", 0), ("e", 0), ("f", 1), ("P(x)*", 1))
    assert g.bracket.vec(0, 1) == (ZERO, ONE, ZERO, ZERO)
    assert g.bracket.vec(0, 2) == (ZERO, ZERO, -ONE, ZERO)
    assert g.bracket.vec(1, 2) == (ZERO, ZERO, ZERO, ONE)
    assert g.metric.matrix[0][3] == ONE and g.metric.matrix[1][2] == ONE


def test_heisenberg_zero_derivation_still_valid():
    h = hyperbolic_pair()
    d = GradedLinearMap.zero(h.space, h.space, 0)
    g = heisenberg_extension(HeisenbergExtensionParams(h, d))
    assert all(linalg.vec_is_zero(g.bracket.vec(i, j)) for i in range(4) for j in range(4))


def test_heisenberg_invalid_params():
    from generators import _sl2_killing
    # identity map is not a derivation of a non-abelian h
    h4 = heisenberg_extension(default_heisenberg_params())
    with pytest.raises(InvalidParams) as exc:
        heisenberg_extension(HeisenbergExtensionParams(h4, GradedLinearMap.identity(h4.space)))
    assert exc.value.condition == "d-derivation"
    # even metric h is rejected outright
    s = _sl2_killing()
    with pytest.raises(InvalidParams) as exc:
        heisenberg_extension(HeisenbergExtensionParams(s, GradedLinearMap.zero(s.space, s.space, 0)))
    assert exc.value.condition == "metric-degree"


def test_catalog_equals_generic_double_extension():
    rng = random.Random(41)
    for _ in range(5):
        p = random_heisenberg_params(rng)
        g1 = heisenberg_extension(p)
        g2 = double_extend(heisenberg_context(p))
        assert g1.bracket.table == g2.bracket.table
        assert g1.metric.matrix == g2.metric.matrix
        q = random_odd_dim1_params(rng)
        o1 = odd_extension_dim1(q)
        o2 = double_extend(odd_extension_context(q))
        assert o1.bracket.table == o2.bracket.table
        assert o1.metric.matrix == o2.metric.matrix


def test_psi_isometry_default_instance():
    p = default_heisenberg_params()
    assert psi_preconditions_hold(p)
    psi = check_psi_isometry(p)
    assert psi.matrix == linalg.identity_mat(4)
    target = heisenberg_target(p)
    assert target.space.labels == ("D", "e", "f", "hbar")
    # hbar is central and pairs with D
    assert all(linalg.vec_is_zero(target.bracket.vec(3, j)) for j in range(4))
    assert target.metric.matrix[0][3] == ONE


def test_psi_preconditions_rejected():
    h = hyperbolic_pair()
    p = HeisenbergExtensionParams(h, GradedLinearMap.zero(h.space, h.space, 0))
    assert not psi_preconditions_hold(p)
    with pytest.raises(InvalidParams) as exc:
        check_psi_isometry(p)
    assert exc.value.condition == "psi-preconditions"


def test_psi_skipped_for_nonabelian_h():
    h4 = heisenberg_extension(default_heisenberg_params())
    d = GradedLinearMap(h4.space, h4.space, 0, h4.bracket.ad_matrix(0))
    p = HeisenbergExtensionParams(h4, d)
    assert not psi_preconditions_hold(p)


def test_nested_extension_labels_stay_unique():
    # use a previous extension (labels x, e, f, P(x)*) as the next h
    h4 = heisenberg_extension(default_heisenberg_params())
    d = GradedLinearMap(h4.space, h4.space, 0, h4.bracket.ad_matrix(0))
    g = heisenberg_extension(HeisenbergExtensionParams(h4, d))
    assert g.dim == 6
    assert g.space.labels[0] == "x1" and g.space.labels[-1] == "P(x1)*"
