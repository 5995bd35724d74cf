"""Contexts of generalized double extension and the extension constructor.

A delta-context carries (h, [.,.]_h, B_h, rho, lambda, omega) over an
auxiliary algebra a. ``validate_context`` machine-checks the defining axioms
exhaustively on basis tuples, ``check_lemma_identities`` verifies the derived
identities that the axioms are known to imply, and ``double_extend`` builds
the quadratic Lie superalgebra of degree delta on a + h + P_delta(a)*.

The construction goes through the proof path: a central extension of h by
the dual block via the cocycle Phi, then the generalized semi-direct product
with a. Every intermediate constructor re-validates its own axioms, so a
successful return is a machine proof for the instance at hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .algebra import (
    LieSuperAlgebra,
    QuadraticLieSuperAlgebra,
    SuperBracket,
    _cyclic_terms,
    delta_coadjoint,
    is_derivation,
    is_metric_skew,
    semidirect_product,
)
from .errors import InvalidContext, LemmaViolation, Violation
from .linalg import ZERO
from .spaces import (
    GradedBilinearForm,
    GradedBilinearMap,
    GradedLinearMap,
    SuperSpace,
    p_delta_dual,
)


@dataclass(frozen=True)
class DeltaContext:
    """Input data for the degree-delta double extension of h by a.

    rho[i] acts on h for the i-th a-basis vector; lam maps a x a into h and
    omega maps a x a into the dual block P_delta(a)*. The constructor checks
    shapes only; the axioms live in validate_context so that violating data
    can be represented, reported and tested.
    """

    delta: int
    a: LieSuperAlgebra
    h: QuadraticLieSuperAlgebra
    rho: tuple[GradedLinearMap, ...]
    lam: GradedBilinearMap
    omega: GradedBilinearMap

    def __post_init__(self):
        if self.delta not in (0, 1):
            raise ValueError("delta must be 0 or 1")
        if len(self.rho) != self.a.dim:
            raise ValueError("one rho map per a-basis vector required")
        for t in self.rho:
            if t.source.basis != self.h.space.basis or t.target.basis != self.h.space.basis:
                raise ValueError("rho maps must act on h")
        if self.lam.left.basis != self.a.space.basis or self.lam.right.basis != self.a.space.basis \
                or self.lam.target.basis != self.h.space.basis:
            raise ValueError("lambda must map a x a into h")
        dual = self.dual_block
        if self.omega.left.basis != self.a.space.basis or self.omega.right.basis != self.a.space.basis \
                or self.omega.target.basis != dual.basis:
            raise ValueError("omega must map a x a into the dual block")

    @property
    def dual_block(self) -> SuperSpace:
        return p_delta_dual(self.a.space, self.delta)

    @classmethod
    def trivial(cls, delta: int, a: LieSuperAlgebra, h: QuadraticLieSuperAlgebra) -> "DeltaContext":
        dual = p_delta_dual(a.space, delta)
        zero_rho = tuple(
            GradedLinearMap.zero(h.space, h.space, a.space.parity(i)) for i in range(a.dim)
        )
        return cls(delta, a, h, zero_rho,
                   GradedBilinearMap.zero(a.space, a.space, h.space),
                   GradedBilinearMap.zero(a.space, a.space, dual))


def derive_chi(ctx: DeltaContext) -> GradedBilinearMap:
    """chi(x,u)(P_d(y)) = -(-1)^{|u||y|} B_h(lambda(x,y), u), valued in the dual block."""
    a_sp, h_sp, dual = ctx.a.space, ctx.h.space, ctx.dual_block
    bh = ctx.h.metric
    table = []
    for i in range(a_sp.dim):
        row = []
        for m in range(h_sp.dim):
            val = []
            for k in range(a_sp.dim):
                sign = -1 if h_sp.parity(m) * a_sp.parity(k) else 1
                lam_ik = ctx.lam.value(i, k)
                val.append(-sign * sum((c * bh.matrix[r][m] for r, c in enumerate(lam_ik) if c), ZERO))
            row.append(tuple(val))
        table.append(tuple(row))
    return GradedBilinearMap(a_sp, h_sp, dual, tuple(table))


def derive_phi(ctx: DeltaContext) -> GradedBilinearMap:
    """Phi(u,v)(P_d(x)) = (-1)^{|x|(|u|+|v|)} B_h(rho(x)(u), v); checked super skew."""
    a_sp, h_sp, dual = ctx.a.space, ctx.h.space, ctx.dual_block
    bh = ctx.h.metric
    table = []
    for m in range(h_sp.dim):
        row = []
        for l in range(h_sp.dim):
            val = []
            for k in range(a_sp.dim):
                sign = -1 if (a_sp.parity(k) * (h_sp.parity(m) + h_sp.parity(l))) % 2 else 1
                col = ctx.rho[k].column(m)
                val.append(sign * sum((c * bh.matrix[r][l] for r, c in enumerate(col) if c), ZERO))
            row.append(tuple(val))
        table.append(tuple(row))
    phi = GradedBilinearMap(h_sp, h_sp, dual, tuple(table))
    v = phi.check_super_skew("phi-skew")
    if v is not None:
        # rho not metric-skew would surface here; report as a context defect
        raise InvalidContext(v)
    return phi


def validate_context(ctx: DeltaContext) -> list[Violation]:
    """All context axioms, exhaustively on basis tuples; empty list means ok."""
    out: list[Violation] = []
    a_sp = ctx.a.space
    na = a_sp.dim
    par = a_sp.parities

    if ctx.h.delta != ctx.delta:
        out.append(Violation("metric-degree", (), ctx.h.delta,
                             f"h metric degree must equal delta={ctx.delta}"))

    for i, t in enumerate(ctx.rho):
        if t.degree != par[i]:
            out.append(Violation("rho-degree", (i,), t.degree))
        if not is_derivation(t, ctx.h.bracket):
            out.append(Violation("rho-derivation", (i,)))
        if not is_metric_skew(t, ctx.h.metric):
            out.append(Violation("rho-skew", (i,)))

    for check, name in ((ctx.lam.check_even, "lambda-even"),
                        (ctx.lam.check_super_skew, "lambda-skew"),
                        (ctx.omega.check_even, "omega-even"),
                        (ctx.omega.check_super_skew, "omega-skew")):
        v = check(name)
        if v is not None:
            out.append(v)
    if out:
        return out  # derived maps below assume well-formed pieces

    chi = derive_chi(ctx)
    rep = delta_coadjoint(ctx.a, ctx.delta)
    nh = ctx.h.dim

    # deh1: [rho(x),rho(y)] - rho([x,y]_a) = ad_h(lambda(x,y))
    for i in range(na):
        for j in range(na):
            sign = -1 if par[i] * par[j] else 1
            comm = linalg.mat_sub(
                linalg.mat_mul(ctx.rho[i].matrix, ctx.rho[j].matrix),
                linalg.mat_scale(sign, linalg.mat_mul(ctx.rho[j].matrix, ctx.rho[i].matrix)))
            rb = linalg.zero_mat(nh, nh)
            for m, c in enumerate(ctx.a.bracket.table[i][j]):
                if c:
                    rb = linalg.mat_add(rb, linalg.mat_scale(c, ctx.rho[m].matrix))
            rhs = ctx.h.bracket.ad_vector_matrix(ctx.lam.value(i, j))
            if linalg.mat_sub(comm, rb) != rhs:
                out.append(Violation("deh1", (i, j)))

    def rho_vector(w: Sequence) -> linalg.Matrix:
        acc = linalg.zero_mat(nh, nh)
        for m, c in enumerate(w):
            if c:
                acc = linalg.mat_add(acc, linalg.mat_scale(c, ctx.rho[m].matrix))
        return acc

    # deh2: cyclic sum of rho(x)(lambda(y,z)) + lambda(x,[y,z]_a)
    for i in range(na):
        for j in range(na):
            for k in range(na):
                s1, s2, s3 = _cyclic_terms(par[i], par[j], par[k])

                def piece(x, y, z):
                    return linalg.vec_add(
                        ctx.rho[x].apply(ctx.lam.value(y, z)),
                        ctx.lam.right_vector(x, ctx.a.bracket.table[y][z]))

                total = linalg.vec_scale(s1, piece(i, j, k))
                total = linalg.vec_add(total, linalg.vec_scale(s2, piece(j, k, i)))
                total = linalg.vec_add(total, linalg.vec_scale(s3, piece(k, i, j)))
                if not linalg.vec_is_zero(total):
                    out.append(Violation("deh2", (i, j, k), total))

    # deh3: cyclic sum of ad*_d(x)(omega(y,z)) + omega(x,[y,z]_a) + chi(x,lambda(y,z))
    for i in range(na):
        for j in range(na):
            for k in range(na):
                s1, s2, s3 = _cyclic_terms(par[i], par[j], par[k])

                def piece(x, y, z):
                    t = rep.action[x].apply(ctx.omega.value(y, z))
                    t = linalg.vec_add(t, ctx.omega.right_vector(x, ctx.a.bracket.table[y][z]))
                    return linalg.vec_add(t, chi.right_vector(x, ctx.lam.value(y, z)))

                total = linalg.vec_scale(s1, piece(i, j, k))
                total = linalg.vec_add(total, linalg.vec_scale(s2, piece(j, k, i)))
                total = linalg.vec_add(total, linalg.vec_scale(s3, piece(k, i, j)))
                if not linalg.vec_is_zero(total):
                    out.append(Violation("deh3", (i, j, k), total))

    # super cyclic condition on omega
    for i in range(na):
        for j in range(na):
            for k in range(na):
                sign = -1 if ((par[j] + par[k]) * par[i]) % 2 else 1
                lhs = ctx.omega.value(i, j)[k]
                rhs = sign * ctx.omega.value(j, k)[i]
                if lhs != rhs:
                    out.append(Violation("super-cyclic", (i, j, k), lhs - rhs))

    return out


def check_lemma_identities(ctx: DeltaContext) -> list[Violation]:
    """Derived identities for chi and Phi; empty for every valid context.

    On a context that fails its own axioms the residuals are returned as
    diagnostics. If the axioms hold and a residual is still nonzero, that is
    an internal inconsistency and LemmaViolation is raised: the identities
    are consequences, never independent conditions.
    """
    out = _lemma_residuals(ctx)
    if out and not validate_context(ctx):
        raise LemmaViolation(out)
    return out


def _lemma_residuals(ctx: DeltaContext) -> list[Violation]:
    out: list[Violation] = []
    chi = derive_chi(ctx)
    phi = derive_phi(ctx)
    rep = delta_coadjoint(ctx.a, ctx.delta)
    a_sp, h_sp = ctx.a.space, ctx.h.space
    na, nh = a_sp.dim, h_sp.dim
    pa, qh = a_sp.parities, h_sp.parities

    # Phi(rho(x)u, v) + (-1)^{|x||u|} Phi(u, rho(x)v) - ad*_d(x)(Phi(u,v)) - chi(x,[u,v]_h) = 0
    for i in range(na):
        for m in range(nh):
            for l in range(nh):
                total = phi.left_vector(ctx.rho[i].column(m), l)
                sign = -1 if pa[i] * qh[m] else 1
                total = linalg.vec_add(total, linalg.vec_scale(sign, phi.right_vector(m, ctx.rho[i].column(l))))
                total = linalg.vec_sub(total, rep.action[i].apply(phi.value(m, l)))
                total = linalg.vec_sub(total, chi.right_vector(i, ctx.h.bracket.table[m][l]))
                if not linalg.vec_is_zero(total):
                    out.append(Violation("lemma-1", (i, m, l), total))

    # chi([x,y]_a,u) - chi(x,rho(y)u) + (-1)^{|x||y|} chi(y,rho(x)u)
    #   - ad*_d(x)(chi(y,u)) + (-1)^{|x||y|} ad*_d(y)(chi(x,u)) + Phi(lambda(x,y),u) = 0
    for i in range(na):
        for j in range(na):
            sign = -1 if pa[i] * pa[j] else 1
            for m in range(nh):
                total = chi.left_vector(ctx.a.bracket.table[i][j], m)
                total = linalg.vec_sub(total, chi.right_vector(i, ctx.rho[j].column(m)))
                total = linalg.vec_add(total, linalg.vec_scale(sign, chi.right_vector(j, ctx.rho[i].column(m))))
                total = linalg.vec_sub(total, rep.action[i].apply(chi.value(j, m)))
                total = linalg.vec_add(total, linalg.vec_scale(sign, rep.action[j].apply(chi.value(i, m))))
                total = linalg.vec_add(total, phi.left_vector(ctx.lam.value(i, j), m))
                if not linalg.vec_is_zero(total):
                    out.append(Violation("lemma-2", (i, j, m), total))

    # cyclic sum of (-1)^{|u||w|} Phi(u,[v,w]_h) = 0
    for m in range(nh):
        for l in range(nh):
            for r in range(nh):
                s1, s2, s3 = _cyclic_terms(qh[m], qh[l], qh[r])
                total = linalg.vec_scale(s1, phi.right_vector(m, ctx.h.bracket.table[l][r]))
                total = linalg.vec_add(total, linalg.vec_scale(s2, phi.right_vector(l, ctx.h.bracket.table[r][m])))
                total = linalg.vec_add(total, linalg.vec_scale(s3, phi.right_vector(r, ctx.h.bracket.table[m][l])))
                if not linalg.vec_is_zero(total):
                    out.append(Violation("phi-cocycle", (m, l, r), total))

    return out


def central_extension(ctx: DeltaContext, phi: GradedBilinearMap) -> LieSuperAlgebra:
    """h + dual block with [u + a, v + b]' = [u,v]_h + Phi(u,v), dual block central."""
    h_sp, dual = ctx.h.space, ctx.dual_block
    nh, nd = h_sp.dim, dual.dim
    space = SuperSpace(h_sp.basis + dual.basis)
    n = nh + nd
    table = [[linalg.zero_vec(n) for _ in range(n)] for _ in range(n)]
    for m in range(nh):
        for l in range(nh):
            table[m][l] = tuple(ctx.h.bracket.table[m][l]) + tuple(phi.value(m, l))
    return LieSuperAlgebra(SuperBracket(space, tuple(tuple(row) for row in table)))


def extension_derivations(ctx: DeltaContext, chi: GradedBilinearMap,
                          ce_space: SuperSpace) -> tuple[GradedLinearMap, ...]:
    """Theta(x) = rho(x) + ad*_d(x) + chi(x, .) acting on h + dual block."""
    rep = delta_coadjoint(ctx.a, ctx.delta)
    nh, nd = ctx.h.dim, ctx.dual_block.dim
    na = ctx.a.dim
    maps = []
    for i in range(na):
        rows = [[ZERO] * (nh + nd) for _ in range(nh + nd)]
        for m in range(nh):
            col_h = ctx.rho[i].column(m)
            col_d = chi.value(i, m)
            for r in range(nh):
                rows[r][m] = col_h[r]
            for k in range(nd):
                rows[nh + k][m] = col_d[k]
        for k in range(nd):
            col = rep.action[i].column(k)
            for r in range(nd):
                rows[nh + r][nh + k] = col[r]
        maps.append(GradedLinearMap(ce_space, ce_space, ctx.a.space.parity(i),
                                    tuple(tuple(r) for r in rows)))
    return tuple(maps)


def extension_metric(ctx: DeltaContext, space: SuperSpace) -> GradedBilinearForm:
    """Degree-delta metric on a + h + dual: B_h on h, dual pairing elsewhere.

    B(P_d(a_i)*, a_j) = delta_ij and the (a, dual) entries are the
    super-symmetric partners (-1)^{|a_i|(1+delta)} delta_ij; this is the
    unique super-symmetric completion of the natural evaluation pairing.
    """
    na, nh = ctx.a.dim, ctx.h.dim
    n = na + nh + na
    rows = [[ZERO] * n for _ in range(n)]
    for m in range(nh):
        for l in range(nh):
            rows[na + m][na + l] = ctx.h.metric.matrix[m][l]
    one = linalg.ONE
    for i in range(na):
        rows[na + nh + i][i] = one
        sign = -1 if (ctx.a.space.parity(i) * (1 + ctx.delta)) % 2 else 1
        rows[i][na + nh + i] = sign * one
    return GradedBilinearForm(space, ctx.delta, tuple(tuple(r) for r in rows))


def double_extend(ctx: DeltaContext) -> QuadraticLieSuperAlgebra:
    """Quadratic Lie superalgebra of degree delta on a + h + P_delta(a)*.

    Raises InvalidContext with all violations when the context axioms fail.
    The returned algebra has basis blocks (a, h, dual) in that order, with
    dual functional parities equal to a-parities plus delta; this ordering is
    part of the file-format contract.
    """
    violations = validate_context(ctx)
    if violations:
        raise InvalidContext(violations)

    chi = derive_chi(ctx)
    phi = derive_phi(ctx)
    ce = central_extension(ctx, phi)
    theta = extension_derivations(ctx, chi, ce.space)

    nce = ce.dim
    lam_rows = []
    for i in range(ctx.a.dim):
        row = []
        for j in range(ctx.a.dim):
            row.append(tuple(ctx.lam.value(i, j)) + tuple(ctx.omega.value(i, j)))
        lam_rows.append(tuple(row))
    big_lambda = GradedBilinearMap(ctx.a.space, ctx.a.space, ce.space, tuple(lam_rows))

    lie = semidirect_product(ctx.a, ce, theta, big_lambda)
    metric = extension_metric(ctx, lie.space)
    return QuadraticLieSuperAlgebra(lie, metric)


def contexts_equal(c1: DeltaContext, c2: DeltaContext) -> bool:
    """Structural equality of the mathematical content, ignoring basis labels."""
    return (
        c1.delta == c2.delta
        and c1.a.space.parities == c2.a.space.parities
        and c1.h.space.parities == c2.h.space.parities
        and c1.a.bracket.table == c2.a.bracket.table
        and c1.h.bracket.table == c2.h.bracket.table
        and c1.h.metric.matrix == c2.h.metric.matrix
        and tuple(t.matrix for t in c1.rho) == tuple(t.matrix for t in c2.rho)
        and c1.lam.table == c2.lam.table
        and c1.omega.table == c2.omega.table
    )
