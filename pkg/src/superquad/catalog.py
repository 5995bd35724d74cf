"""Worked odd-metric constructions: the one-dimensional odd extension and the
Heisenberg superalgebra extended by an even derivation.

Both constructors write the explicit bracket rows and metric directly and
let the quadratic-algebra constructor certify them; the companion
``*_context`` functions assemble the corresponding double-extension context,
so the identity between the explicit output and the generic extension is a
testable theorem rather than a definition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import (
    LieSuperAlgebra,
    QuadraticLieSuperAlgebra,
    SuperBracket,
    is_derivation,
    is_metric_skew,
)
from .errors import InvalidParams, ValidationError, Violation
from .extension import DeltaContext
from .linalg import Vector, ZERO, ONE
from .spaces import GradedBilinearForm, GradedBilinearMap, GradedLinearMap, SuperSpace

ODD = 1


def _one_dim_algebra(label: str, parity: int) -> LieSuperAlgebra:
    return LieSuperAlgebra.abelian(SuperSpace(((label, parity),)))


def _fresh_label(h_space: SuperSpace, base: str = "x") -> str:
    """Generator label whose dual partner also avoids the h labels."""
    taken = set(h_space.labels)
    k = 0
    while True:
        lab = base if k == 0 else f"{base}{k}"
        if lab not in taken and f"P({lab})*" not in taken and f"{lab}*" not in taken:
            return lab
        k += 1


@dataclass(frozen=True)
class OddExtensionParams:
    """Data for the odd extension by a single odd generator x.

    D plays rho(x), w plays lambda(x,x) and eta scales omega(x,x); the three
    stated conditions are exactly the context axioms specialised to this
    shape: D an odd B_h-skew derivation with D^2 = (1/2) ad_h(w) and D(w) = 0.
    """

    h: QuadraticLieSuperAlgebra
    d: GradedLinearMap
    w: Vector
    eta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "w", linalg.vec(self.w))
        object.__setattr__(self, "eta", Fraction(self.eta))
        if len(self.w) != self.h.dim:
            raise ValueError("w must be a vector of h")

    def validate(self) -> None:
        if self.h.delta != ODD:
            raise InvalidParams("metric-degree", message="h must carry an odd metric")
        if self.d.degree != 1:
            raise InvalidParams("d-degree", message="D must be odd")
        if not is_derivation(self.d, self.h.bracket):
            raise InvalidParams("d-derivation")
        if not is_metric_skew(self.d, self.h.metric):
            raise InvalidParams("d-skew")
        for r, c in enumerate(self.w):
            if c != 0 and self.h.space.parity(r) != 0:
                raise InvalidParams("w-parity", message="w must be even")
        twice_dd = linalg.mat_scale(2, linalg.mat_mul(self.d.matrix, self.d.matrix))
        if twice_dd != self.h.bracket.ad_vector_matrix(self.w):
            raise InvalidParams("deh1", message="D^2 must equal (1/2) ad_h(w)")
        if not linalg.vec_is_zero(self.d.apply(self.w)):
            raise InvalidParams("deh2", message="D(w) must vanish")


def odd_extension_dim1(p: OddExtensionParams) -> QuadraticLieSuperAlgebra:
    """Odd quadratic algebra on Fx + h + F P(x)* with x odd.

    Bracket rows: [x,x] = w + eta P(x)*, [x,u] = D(u) - (-1)^{|u|} B_h(u,w) P(x)*,
    [u,v] = [u,v]_h + B_h(D(u),v) P(x)*, P(x)* central. Metric: B_h on h and
    B(x, P(x)*) = 1.
    """
    p.validate()
    h = p.h
    nh = h.dim
    n = nh + 2
    lab = _fresh_label(h.space)
    space = SuperSpace(((lab, 1),) + h.space.basis + ((f"P({lab})*", 0),))

    def embed_h(v):
        return (ZERO,) + tuple(v) + (ZERO,)

    table = [[linalg.zero_vec(n) for _ in range(n)] for _ in range(n)]
    table[0][0] = linalg.vec_add(embed_h(p.w), tuple(ZERO for _ in range(n - 1)) + (p.eta,))
    for m in range(nh):
        qm = h.space.parity(m)
        coeff = -sum((p.w[r] * h.metric.matrix[m][r] for r in range(nh) if p.w[r]), ZERO)
        if qm:
            coeff = -coeff
        row = embed_h(p.d.column(m))
        row = row[:-1] + (coeff,)
        table[0][1 + m] = row
        sign = -1 if qm else 1
        table[1 + m][0] = linalg.vec_scale(-sign, row)
    for m in range(nh):
        dm = p.d.column(m)
        for l in range(nh):
            coeff = sum((dm[r] * h.metric.matrix[r][l] for r in range(nh) if dm[r]), ZERO)
            table[1 + m][1 + l] = embed_h(h.bracket.table[m][l])[:-1] + (coeff,)

    rows = [[ZERO] * n for _ in range(n)]
    for m in range(nh):
        for l in range(nh):
            rows[1 + m][1 + l] = h.metric.matrix[m][l]
    rows[0][n - 1] = ONE
    rows[n - 1][0] = ONE
    metric = GradedBilinearForm(space, ODD, tuple(tuple(r) for r in rows))
    return QuadraticLieSuperAlgebra(LieSuperAlgebra(SuperBracket(space, tuple(tuple(r) for r in table))), metric)


def odd_extension_context(p: OddExtensionParams) -> DeltaContext:
    """The context whose double extension the explicit construction realises."""
    p.validate()
    lab = _fresh_label(p.h.space)
    a = _one_dim_algebra(lab, 1)
    lam = GradedBilinearMap(a.space, a.space, p.h.space, ((tuple(p.w),),))
    dual = SuperSpace(((f"P({lab})*", 0),))
    omega = GradedBilinearMap(a.space, a.space, dual, (((p.eta,),),))
    return DeltaContext(ODD, a, p.h, (p.d,), lam, omega)


@dataclass(frozen=True)
class HeisenbergExtensionParams:
    """Data for extending an odd quadratic h by an even generator acting as D."""

    h: QuadraticLieSuperAlgebra
    d: GradedLinearMap

    def validate(self) -> None:
        if self.h.delta != ODD:
            raise InvalidParams("metric-degree", message="h must carry an odd metric")
        if self.d.degree != 0:
            raise InvalidParams("d-degree", message="D must be even")
        if not is_derivation(self.d, self.h.bracket):
            raise InvalidParams("d-derivation")
        if not is_metric_skew(self.d, self.h.metric):
            raise InvalidParams("d-skew")


def heisenberg_extension(p: HeisenbergExtensionParams) -> QuadraticLieSuperAlgebra:
    """Odd quadratic algebra on Fx + h + F P(x)* with x even.

    Bracket rows: [x,u] = D(u), [u,v] = [u,v]_h + B_h(D(u),v) P(x)*, P(x)*
    central, [x,x] = [x,P(x)*] = 0. Metric: B_h on h and B(x, P(x)*) = 1.
    """
    p.validate()
    h = p.h
    nh = h.dim
    n = nh + 2
    lab = _fresh_label(h.space)
    space = SuperSpace(((lab, 0),) + h.space.basis + ((f"P({lab})*", 1),))

    def embed_h(v):
        return (ZERO,) + tuple(v) + (ZERO,)

    table = [[linalg.zero_vec(n) for _ in range(n)] for _ in range(n)]
    for m in range(nh):
        img = embed_h(p.d.column(m))
        table[0][1 + m] = img
        table[1 + m][0] = linalg.vec_scale(-1, img)
    for m in range(nh):
        dm = p.d.column(m)
        for l in range(nh):
            coeff = sum((dm[r] * h.metric.matrix[r][l] for r in range(nh) if dm[r]), ZERO)
            table[1 + m][1 + l] = embed_h(h.bracket.table[m][l])[:-1] + (coeff,)

    rows = [[ZERO] * n for _ in range(n)]
    for m in range(nh):
        for l in range(nh):
            rows[1 + m][1 + l] = h.metric.matrix[m][l]
    rows[0][n - 1] = ONE
    rows[n - 1][0] = ONE
    metric = GradedBilinearForm(space, ODD, tuple(tuple(r) for r in rows))
    return QuadraticLieSuperAlgebra(LieSuperAlgebra(SuperBracket(space, tuple(tuple(r) for r in table))), metric)


def heisenberg_context(p: HeisenbergExtensionParams) -> DeltaContext:
    """The context for the even-generator extension: lambda = omega = 0."""
    p.validate()
    a = _one_dim_algebra(_fresh_label(p.h.space), 0)
    ctx = DeltaContext.trivial(ODD, a, p.h)
    return DeltaContext(ODD, a, p.h, (p.d,), ctx.lam, ctx.omega)


def heisenberg_target(p: HeisenbergExtensionParams) -> QuadraticLieSuperAlgebra:
    """h(D) = F D + h + F hbar: the Heisenberg superalgebra of the form
    omega(u,v) = B_h(D(u),v), extended by D acting as an even derivation."""
    h = p.h
    nh = h.dim
    n = nh + 2
    dlab = _fresh_label(h.space, "D")
    hlab = _fresh_label(h.space, "hbar")
    space = SuperSpace(((dlab, 0),) + h.space.basis + ((hlab, 1),))
    table = [[linalg.zero_vec(n) for _ in range(n)] for _ in range(n)]
    for m in range(nh):
        img = (ZERO,) + tuple(p.d.column(m)) + (ZERO,)
        table[0][1 + m] = img
        table[1 + m][0] = linalg.vec_scale(-1, img)
    for m in range(nh):
        dm = p.d.column(m)
        for l in range(nh):
            coeff = sum((dm[r] * h.metric.matrix[r][l] for r in range(nh) if dm[r]), ZERO)
            table[1 + m][1 + l] = linalg.zero_vec(n)[:-1] + (coeff,)

    rows = [[ZERO] * n for _ in range(n)]
    for m in range(nh):
        for l in range(nh):
            rows[1 + m][1 + l] = h.metric.matrix[m][l]
    rows[0][n - 1] = ONE
    rows[n - 1][0] = ONE
    metric = GradedBilinearForm(space, ODD, tuple(tuple(r) for r in rows))
    return QuadraticLieSuperAlgebra(LieSuperAlgebra(SuperBracket(space, tuple(tuple(r) for r in table))), metric)


def psi_preconditions_hold(p: HeisenbergExtensionParams) -> bool:
    """h Abelian and (u,v) -> B_h(D(u),v) non-degenerate."""
    if any(c for row in p.h.bracket.table for v in row for c in v):
        return False
    w = linalg.mat_mul(linalg.transpose(p.d.matrix), p.h.metric.matrix)
    return linalg.rank(w, p.h.dim) == p.h.dim


def check_psi_isometry(p: HeisenbergExtensionParams) -> GradedLinearMap:
    """Verify eta x + u + zeta P(x)* -> eta D + u + zeta hbar onto h(D).

    Entrywise comparison of structure constants and metrics under the basis
    correspondence; returns the isometry, raises ValidationError on mismatch.
    """
    if not psi_preconditions_hold(p):
        raise InvalidParams("psi-preconditions",
                            message="h must be Abelian with non-degenerate omega")
    g = heisenberg_extension(p)
    target = heisenberg_target(p)
    if g.bracket.table != target.bracket.table:
        raise ValidationError(Violation("psi-bracket", (), None,
                                        "brackets differ under the basis correspondence"))
    if g.metric.matrix != target.metric.matrix:
        raise ValidationError(Violation("psi-metric"))
    return GradedLinearMap(g.space, target.space, 0, linalg.identity_mat(g.dim))


def default_odd_dim1_params(eta=Fraction(1)) -> OddExtensionParams:
    """Trivial-h instance: the 2-dimensional algebra [x,x] = eta P(x)*."""
    h_space = SuperSpace(())
    h = QuadraticLieSuperAlgebra(LieSuperAlgebra.abelian(h_space),
                                 GradedBilinearForm(h_space, ODD, ()))
    d = GradedLinearMap.zero(h_space, h_space, 1)
    return OddExtensionParams(h, d, (), Fraction(eta))


def default_heisenberg_params(pairs: int = 1) -> HeisenbergExtensionParams:
    """h = hyperbolic pairs (e_i even, f_i odd), B_h(e_i,f_i) = 1, D = diag(1,-1)."""
    if pairs < 1:
        raise ValueError("need at least one hyperbolic pair")
    basis = []
    for i in range(pairs):
        suffix = str(i) if pairs > 1 else ""
        basis.append((f"e{suffix}", 0))
        basis.append((f"f{suffix}", 1))
    h_space = SuperSpace(tuple(basis))
    nh = 2 * pairs
    rows = [[ZERO] * nh for _ in range(nh)]
    dmat = [[ZERO] * nh for _ in range(nh)]
    for i in range(pairs):
        rows[2 * i][2 * i + 1] = ONE
        rows[2 * i + 1][2 * i] = ONE
        dmat[2 * i][2 * i] = ONE
        dmat[2 * i + 1][2 * i + 1] = -ONE
    h = QuadraticLieSuperAlgebra(LieSuperAlgebra.abelian(h_space),
                                 GradedBilinearForm(h_space, ODD, tuple(tuple(r) for r in rows)))
    d = GradedLinearMap(h_space, h_space, 0, tuple(tuple(r) for r in dmat))
    return HeisenbergExtensionParams(h, d)
