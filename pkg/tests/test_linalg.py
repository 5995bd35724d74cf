import random
from fractions import Fraction

from superquad import linalg
from superquad.linalg import ONE, ZERO


def rand_mat(rng, m, n):
    return [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(m)]


def test_rref_identity():
    red, pivots = linalg.rref(linalg.identity_mat(3))
    assert pivots == [0, 1, 2]
    assert tuple(tuple(r) for r in red) == linalg.identity_mat(3)


def test_rank_nullspace_dimensions():
    rng = random.Random(1)
    for _ in range(40):
        m, n = rng.randint(0, 5), rng.randint(1, 5)
        a = rand_mat(rng, m, n)
        r = linalg.rank(a, n)
        null = linalg.nullspace(a, n)
        assert r + len(null) == n
        for v in null:
            assert linalg.vec_is_zero(linalg.mat_vec(linalg.mat(a), v))


def test_solve_substitutes_back():
    rng = random.Random(2)
    for _ in range(40):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        a = rand_mat(rng, m, n)
        x = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        b = linalg.mat_vec(linalg.mat(a), x)
        sol = linalg.solve(a, b, n)
        assert sol is not None
        assert linalg.mat_vec(linalg.mat(a), sol) == tuple(b)


def test_solve_reports_inconsistent():
    assert linalg.solve([[ONE, ONE], [ONE, ONE]], [ONE, ZERO]) is None


def test_inverse_roundtrip():
    rng = random.Random(3)
    found = 0
    while found < 20:
        n = rng.randint(1, 5)
        a = rand_mat(rng, n, n)
        inv = linalg.inverse(linalg.mat(a))
        if inv is None:
            continue
        found += 1
        assert linalg.mat_mul(inv, linalg.mat(a)) == linalg.identity_mat(n)


def test_empty_shapes():
    assert linalg.rank([], 4) == 0
    assert len(linalg.nullspace([], 3)) == 3
    assert linalg.solve([], [], 0) == ()
    assert linalg.inverse(()) == ()


def test_solve_is_deterministic_first_pivot():
    # one equation, two unknowns: the first column carries the pivot
    sol = linalg.solve([[ONE, ONE]], [Fraction(5)], 2)
    assert sol == (Fraction(5), ZERO)


def test_extend_independent():
    base = [(ONE, ZERO, ZERO)]
    cands = [(Fraction(2), ZERO, ZERO), (ZERO, ONE, ZERO), (ONE, ONE, ZERO), (ZERO, ZERO, ONE)]
    assert linalg.extend_independent(base, cands) == [1, 3]
