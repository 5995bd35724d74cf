"""Lie superalgebra structures and their verification predicates.

Structure constants are stored densely for every ordered pair of basis
indices; the super skew relation between (i,j) and (j,i) is validated, never
assumed. Constructors reject anything failing grading, super skew-symmetry or
the Jacobi super identity, and every predicate returns its first witness on
failure: verification is part of the user-facing surface.

Checks run on basis tuples only; bilinearity extends them to arbitrary
vectors, so basis exhaustiveness is completeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import ConditionViolated, ValidationError, Violation
from .linalg import Matrix, Vector, ZERO
from .spaces import (
    GradedBilinearForm,
    GradedBilinearMap,
    GradedLinearMap,
    SuperSpace,
    apply_p_delta,
    check_form_degree,
    dual_space,
)


@dataclass(frozen=True)
class SuperBracket:
    """Bracket table on a super-space: table[i][j] = coordinates of [e_i, e_j]."""

    space: SuperSpace
    table: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        n = self.space.dim
        object.__setattr__(
            self, "table",
            tuple(tuple(linalg.vec(v) for v in row) for row in self.table),
        )
        if len(self.table) != n or any(len(row) != n or any(len(v) != n for v in row) for row in self.table):
            raise ValueError("bracket table must be dim x dim of dim-vectors")

    @classmethod
    def zero(cls, space: SuperSpace) -> "SuperBracket":
        n = space.dim
        return cls(space, tuple(tuple(linalg.zero_vec(n) for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_entries(cls, space: SuperSpace, entries) -> "SuperBracket":
        """entries: iterable of structure constants (i, j, k, c) meaning
        [e_i, e_j] has coefficient c on e_k. Both (i,j) and (j,i) rows are
        expected in the input; nothing is symmetrised."""
        n = space.dim
        table = [[list(linalg.zero_vec(n)) for _ in range(n)] for _ in range(n)]
        for i, j, k, c in entries:
            table[i][j][k] += Fraction(c)
        return cls(space, tuple(tuple(tuple(v) for v in row) for row in table))

    def vec(self, i: int, j: int) -> Vector:
        return self.table[i][j]

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        out = linalg.zero_vec(self.space.dim)
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    out = linalg.vec_add(out, linalg.vec_scale(a * b, self.table[i][j]))
        return out

    def ad_matrix(self, i: int) -> Matrix:
        """Matrix of ad(e_i): column j is [e_i, e_j]."""
        return linalg.transpose(tuple(self.table[i][j] for j in range(self.space.dim)))

    def ad_vector_matrix(self, w: Sequence) -> Matrix:
        """Matrix of ad(w) for a coordinate vector w."""
        n = self.space.dim
        cols = tuple(self.bracket(w, linalg.unit_vec(n, j)) for j in range(n))
        return linalg.transpose(cols)

    def entries(self):
        """Sorted nonzero structure constants as (i, j, k, c)."""
        out = []
        for i in range(self.space.dim):
            for j in range(self.space.dim):
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        out.append((i, j, k, c))
        return out

    def check_grading(self) -> Violation | None:
        par = self.space.parities
        for i in range(self.space.dim):
            for j in range(self.space.dim):
                want = (par[i] + par[j]) % 2
                for k, c in enumerate(self.table[i][j]):
                    if c != 0 and par[k] != want:
                        return Violation("grading", (i, j, k), c,
                                         "bracket leaves its parity block")
        return None

    def check_super_skew(self) -> Violation | None:
        par = self.space.parities
        for i in range(self.space.dim):
            for j in range(self.space.dim):
                sign = -1 if par[i] * par[j] else 1
                expect = linalg.vec_scale(-sign, self.table[i][j])
                if self.table[j][i] != expect:
                    return Violation("super-skew", (i, j),
                                     linalg.vec_sub(self.table[j][i], expect))
        return None


def jacobi_residual(bracket: SuperBracket, i: int, j: int, k: int) -> Vector:
    """Cyclic sum (-1)^{|x||z|}[x,[y,z]] over (e_i, e_j, e_k)."""
    par = bracket.space.parities
    n = bracket.space.dim

    def term(a, b, c):
        inner = bracket.table[b][c]
        out = linalg.zero_vec(n)
        for m, coeff in enumerate(inner):
            if coeff:
                out = linalg.vec_add(out, linalg.vec_scale(coeff, bracket.table[a][m]))
        sign = -1 if par[a] * par[c] else 1
        return linalg.vec_scale(sign, out)

    total = term(i, j, k)
    total = linalg.vec_add(total, term(j, k, i))
    total = linalg.vec_add(total, term(k, i, j))
    return total


def check_jacobi(bracket: SuperBracket) -> Violation | None:
    """First violating triple of the Jacobi super identity, or None.

    Once super skew-symmetry holds, the cyclic sum for a permuted triple is a
    sign multiple of the sum for the sorted one, so scanning i <= j <= k is
    exhaustive.
    """
    n = bracket.space.dim
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                res = jacobi_residual(bracket, i, j, k)
                if not linalg.vec_is_zero(res):
                    return Violation("jacobi", (i, j, k), res)
    return None


@dataclass(frozen=True)
class LieSuperAlgebra:
    bracket: SuperBracket

    def __post_init__(self):
        for check in (self.bracket.check_grading, self.bracket.check_super_skew,
                      lambda: check_jacobi(self.bracket)):
            v = check()
            if v is not None:
                raise ValidationError(v)

    @property
    def space(self) -> SuperSpace:
        return self.bracket.space

    @property
    def dim(self) -> int:
        return self.bracket.space.dim

    @classmethod
    def abelian(cls, space: SuperSpace) -> "LieSuperAlgebra":
        return cls(SuperBracket.zero(space))


def check_invariance(form: GradedBilinearForm, bracket: SuperBracket) -> Violation | None:
    """B([x,y],z) = B(x,[y,z]) on all basis triples; witness on failure."""
    if form.space.basis != bracket.space.basis:
        raise ValueError("form and bracket live on different spaces")
    n = form.space.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = sum((c * form.matrix[m][k] for m, c in enumerate(bracket.table[i][j]) if c), ZERO)
                rhs = sum((c * form.matrix[i][m] for m, c in enumerate(bracket.table[j][k]) if c), ZERO)
                if lhs != rhs:
                    return Violation("invariance", (i, j, k), lhs - rhs)
    return None


@dataclass(frozen=True)
class QuadraticLieSuperAlgebra:
    """Lie superalgebra with an invariant metric, homogeneous of degree delta."""

    algebra: LieSuperAlgebra
    metric: GradedBilinearForm

    def __post_init__(self):
        if self.metric.space.basis != self.algebra.space.basis:
            raise ValidationError(Violation("metric-space", (), None, "metric on wrong space"))
        realised = check_form_degree(self.metric)  # raises NotHomogeneous on mixed patterns
        if realised != self.metric.degree:
            raise ValidationError(Violation("metric-degree", (), realised,
                                            f"declared degree {self.metric.degree}"))
        v = self.metric.check_supersymmetry()
        if v is not None:
            raise ValidationError(v)
        v = check_invariance(self.metric, self.algebra.bracket)
        if v is not None:
            raise ValidationError(v)
        if not self.metric.is_non_degenerate():
            raise ValidationError(Violation("non-degenerate", (), self.metric.rank(),
                                            f"metric rank below dim {self.space.dim}"))

    @property
    def space(self) -> SuperSpace:
        return self.algebra.space

    @property
    def bracket(self) -> SuperBracket:
        return self.algebra.bracket

    @property
    def delta(self) -> int:
        return self.metric.degree

    @property
    def dim(self) -> int:
        return self.algebra.dim


def is_derivation(d: GradedLinearMap, bracket: SuperBracket) -> bool:
    """Leibniz rule D[x,y] = [Dx,y] + (-1)^{|D||x|}[x,Dy] on all basis pairs."""
    if d.source.basis != bracket.space.basis or d.target.basis != bracket.space.basis:
        raise ValueError("derivation candidate must map the algebra to itself")
    n = bracket.space.dim
    par = bracket.space.parities
    for i in range(n):
        di = d.column(i)
        for j in range(n):
            lhs = d.apply(bracket.table[i][j])
            rhs = bracket.bracket(di, linalg.unit_vec(n, j))
            sign = -1 if (d.degree * par[i]) % 2 else 1
            rhs = linalg.vec_add(rhs, linalg.vec_scale(sign, bracket.bracket(linalg.unit_vec(n, i), d.column(j))))
            if lhs != rhs:
                return False
    return True


def is_metric_skew(d: GradedLinearMap, form: GradedBilinearForm) -> bool:
    """B(Dx,y) = -(-1)^{|x||D|} B(x,Dy) on all basis pairs."""
    if d.source.basis != form.space.basis:
        raise ValueError("map and form live on different spaces")
    n = form.space.dim
    par = form.space.parities
    for i in range(n):
        di = d.column(i)
        for j in range(n):
            lhs = form.value(di, linalg.unit_vec(n, j))
            sign = -1 if (par[i] * d.degree) % 2 else 1
            rhs = -sign * form.value(linalg.unit_vec(n, i), d.column(j))
            if lhs != rhs:
                return False
    return True


def b_flat(form: GradedBilinearForm) -> GradedLinearMap:
    """Musical map g -> g*, x -> B(x, .); degree |B|, bijective iff B non-degenerate."""
    return GradedLinearMap(form.space, dual_space(form.space), form.degree,
                           linalg.transpose(form.matrix))


@dataclass(frozen=True)
class Representation:
    """Action of an algebra on a module space; action[i] realises basis vector i."""

    algebra: LieSuperAlgebra
    module_space: SuperSpace
    action: tuple[GradedLinearMap, ...]

    def __post_init__(self):
        if len(self.action) != self.algebra.dim:
            raise ValueError("one action map per algebra basis vector required")
        for i, m in enumerate(self.action):
            if m.degree != self.algebra.space.parity(i):
                raise ValueError(f"action of basis vector {i} has wrong degree")
            if m.source.basis != self.module_space.basis or m.target.basis != self.module_space.basis:
                raise ValueError("action maps must be endomorphisms of the module space")

    def act_vector(self, w: Sequence) -> Matrix:
        n = self.module_space.dim
        out = linalg.zero_mat(n, n)
        for i, c in enumerate(w):
            if c:
                out = linalg.mat_add(out, linalg.mat_scale(c, self.action[i].matrix))
        return out

    def check_bracket_law(self) -> Violation | None:
        """action([x,y]) = action(x)action(y) - (-1)^{|x||y|}action(y)action(x)."""
        par = self.algebra.space.parities
        for i in range(self.algebra.dim):
            for j in range(self.algebra.dim):
                lhs = self.act_vector(self.algebra.bracket.table[i][j])
                ab = linalg.mat_mul(self.action[i].matrix, self.action[j].matrix)
                ba = linalg.mat_mul(self.action[j].matrix, self.action[i].matrix)
                sign = -1 if par[i] * par[j] else 1
                rhs = linalg.mat_sub(ab, linalg.mat_scale(sign, ba))
                if lhs != rhs:
                    return Violation("representation", (i, j),
                                     linalg.mat_sub(lhs, rhs))
        return None


def coadjoint(g: LieSuperAlgebra) -> Representation:
    """ad*(x)(f) = -(-1)^{|x||f|} f o ad(x) on the dual space."""
    n = g.dim
    par = g.space.parities
    module = dual_space(g.space)
    maps = []
    for i in range(n):
        rows = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            sign = -1 if par[i] * par[j] else 1
            for k in range(n):
                c = g.bracket.table[i][k][j]
                if c:
                    rows[k][j] = -sign * c
        maps.append(GradedLinearMap(module, module, par[i], tuple(tuple(r) for r in rows)))
    return Representation(g, module, tuple(maps))


def delta_coadjoint(g: LieSuperAlgebra, delta: int) -> Representation:
    """Action on P_delta(g)*: ad*_d(x)(P_d(f))(P_d(y)) = -(-1)^{(|f|+d)|x|} f([x,y])."""
    n = g.dim
    par = g.space.parities
    module = dual_space(apply_p_delta(delta, g.space))
    maps = []
    for i in range(n):
        rows = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            sign = -1 if ((par[j] + delta) * par[i]) % 2 else 1
            for k in range(n):
                c = g.bracket.table[i][k][j]
                if c:
                    rows[k][j] = -sign * c
        maps.append(GradedLinearMap(module, module, par[i], tuple(tuple(r) for r in rows)))
    return Representation(g, module, tuple(maps))


def _cyclic_terms(pi: int, pj: int, pk: int) -> tuple[int, int, int]:
    """Signs of the three cyclic terms for arguments of parities (pi, pj, pk)."""
    s1 = -1 if pk * pi else 1
    s2 = -1 if pi * pj else 1
    s3 = -1 if pj * pk else 1
    return s1, s2, s3


def semidirect_product(a: LieSuperAlgebra, h: LieSuperAlgebra,
                       theta: Sequence[GradedLinearMap],
                       lam: GradedBilinearMap) -> LieSuperAlgebra:
    """Generalized semi-direct product of h by a via (theta, lam).

    Preconditions checked on all basis tuples before the bracket is built:
    each theta(x) is a derivation of h, [theta(x),theta(y)] - theta([x,y]_a)
    = ad_h(lam(x,y)), and the cyclic compatibility of theta with lam.
    Raises ConditionViolated with the witnessing equation and indices.
    """
    na, nh = a.dim, h.dim
    par_a = a.space.parities
    if len(theta) != na:
        raise ValueError("one theta map per a-basis vector required")
    for i, t in enumerate(theta):
        if t.source.basis != h.space.basis or t.target.basis != h.space.basis:
            raise ValueError("theta maps must act on h")
        if t.degree != par_a[i]:
            raise ConditionViolated(Violation("theta-degree", (i,), t.degree))
        if not is_derivation(t, h.bracket):
            raise ConditionViolated(Violation("theta-derivation", (i,)))
    if lam.left.basis != a.space.basis or lam.right.basis != a.space.basis or lam.target.basis != h.space.basis:
        raise ValueError("lambda must be a bilinear map a x a -> h")
    for check, name in ((lam.check_even, "lambda-even"), (lam.check_super_skew, "lambda-skew")):
        v = check(name)
        if v is not None:
            raise ConditionViolated(v)

    # [theta(x),theta(y)] - theta([x,y]_a) must be the inner derivation of lam(x,y)
    for i in range(na):
        for j in range(na):
            sign = -1 if par_a[i] * par_a[j] else 1
            comm = linalg.mat_sub(linalg.mat_mul(theta[i].matrix, theta[j].matrix),
                                  linalg.mat_scale(sign, linalg.mat_mul(theta[j].matrix, theta[i].matrix)))
            tb = linalg.zero_mat(nh, nh)
            for m, c in enumerate(a.bracket.table[i][j]):
                if c:
                    tb = linalg.mat_add(tb, linalg.mat_scale(c, theta[m].matrix))
            rhs = h.bracket.ad_vector_matrix(lam.value(i, j))
            if linalg.mat_sub(comm, tb) != rhs:
                raise ConditionViolated(Violation("semidirect-1", (i, j)))

    # Cyclic sum of theta(x)(lam(y,z)) + lam(x, [y,z]_a)
    for i in range(na):
        for j in range(na):
            for k in range(na):
                s1, s2, s3 = _cyclic_terms(par_a[i], par_a[j], par_a[k])

                def piece(x, y, z):
                    return linalg.vec_add(theta[x].apply(lam.value(y, z)),
                                          lam.right_vector(x, a.bracket.table[y][z]))

                total = linalg.vec_scale(s1, piece(i, j, k))
                total = linalg.vec_add(total, linalg.vec_scale(s2, piece(j, k, i)))
                total = linalg.vec_add(total, linalg.vec_scale(s3, piece(k, i, j)))
                if not linalg.vec_is_zero(total):
                    raise ConditionViolated(Violation("semidirect-2", (i, j, k), total))

    space = SuperSpace(a.space.basis + h.space.basis)
    n = na + nh

    def embed_a(v):
        return tuple(v) + linalg.zero_vec(nh)

    def embed_h(v):
        return linalg.zero_vec(na) + tuple(v)

    table = [[linalg.zero_vec(n) for _ in range(n)] for _ in range(n)]
    for i in range(na):
        for j in range(na):
            table[i][j] = linalg.vec_add(embed_a(a.bracket.table[i][j]), embed_h(lam.value(i, j)))
    for i in range(na):
        for m in range(nh):
            img = embed_h(theta[i].column(m))
            table[i][na + m] = img
            sign = -1 if par_a[i] * h.space.parity(m) else 1
            table[na + m][i] = linalg.vec_scale(-sign, img)
    for m in range(nh):
        for l in range(nh):
            table[na + m][na + l] = embed_h(h.bracket.table[m][l])

    return LieSuperAlgebra(SuperBracket(space, tuple(tuple(row) for row in table)))
