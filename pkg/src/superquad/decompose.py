"""Splitting a quadratic Lie superalgebra along an isotropic abelian ideal.

Given g with invariant metric B of degree delta and an ideal I that is
abelian and isotropic, the pipeline computes I-perp, picks a complement h of
I inside I-perp (any complement is automatically non-degenerate because the
radical of B restricted to I-perp is exactly I), produces a Witt-style
isotropic complement a dual to I, extracts all structure maps of the split
bracket, reconstructs a double-extension context and certifies the isometry
onto its extension. Every step is deterministic: linear solves take first
pivots in canonical basis order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
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
)
from .errors import (
    ClaimViolated,
    DegenerateInput,
    DegeneratePairing,
    NotAnIdealSplit,
    SuperquadError,
    ValidationError,
    Violation,
)
from .extension import DeltaContext, derive_chi, derive_phi, double_extend, validate_context
from .linalg import Vector, ZERO
from .spaces import (
    GradedBilinearForm,
    GradedBilinearMap,
    GradedLinearMap,
    SuperSpace,
    dual_space,
    p_delta_dual,
)

HALF = Fraction(1, 2)


def orthogonal_complement(vectors: Sequence[Sequence], form: GradedBilinearForm) -> list[Vector]:
    """Homogeneous basis of {v : B(s, v) = 0 for all s in the span}."""
    n = form.space.dim
    rows = [linalg.mat_vec(linalg.transpose(form.matrix), s) for s in vectors]
    basis = linalg.nullspace(rows, n)
    for v in basis:
        if form.space.vector_parity(v) is None:
            raise SuperquadError("orthogonal complement produced a non-homogeneous vector")
    return basis


def _homogeneous_parity(space: SuperSpace, v: Sequence) -> int:
    p = space.vector_parity(v)
    if p is None:
        raise ValueError("vector is not homogeneous (or zero)")
    return p


def find_central_minimal_ideal(g: QuadraticLieSuperAlgebra) -> list[Vector] | None:
    """A 1-dimensional homogeneous isotropic subspace of the center, or None.

    Any subspace of the center is an ideal and 1-dimensional ideals are
    minimal. Candidates are the canonical nullspace basis of the centraliser
    system, scanned in order; None when the center is zero or none of the
    candidates is isotropic.
    """
    n = g.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append(tuple(g.bracket.table[i][j][k] for i in range(n)))
    center = linalg.nullspace(rows, n)
    for v in center:
        if g.space.vector_parity(v) is None:
            raise SuperquadError("center basis vector is not homogeneous")
        if g.metric.value(v, v) == 0:
            return [v]
    return None


def _dual_vectors(form: GradedBilinearForm, ideal: Sequence[Vector],
                  avoid: Sequence[Vector]) -> list[Vector]:
    """Solve B(e_m, d_i) = delta_mi with d_i in the right parity block,
    orthogonal to every avoid vector; first-pivot, free coordinates zero."""
    space = form.space
    n = space.dim
    bt = linalg.transpose(form.matrix)
    rows = [linalg.mat_vec(bt, e) for e in ideal]      # row m: c -> B(e_m, e_c)
    avoid_rows = [linalg.mat_vec(bt, w) for w in avoid]
    duals = []
    for i, e in enumerate(ideal):
        want = (_homogeneous_parity(space, e) + form.degree) % 2
        cols = [c for c in range(n) if space.parity(c) == want]
        sys_rows = [[r[c] for c in cols] for r in rows + avoid_rows]
        rhs = [linalg.ONE if m == i else ZERO for m in range(len(ideal))] + [ZERO] * len(avoid_rows)
        sol = linalg.solve(sys_rows, rhs, len(cols))
        if sol is None:
            raise DegenerateInput(f"no dual vector for ideal vector {i}")
        full = [ZERO] * n
        for c, val in zip(cols, sol):
            full[c] = val
        duals.append(tuple(full))
    return duals


def witt_complement(form: GradedBilinearForm, ideal: Sequence[Sequence],
                    avoid: Sequence[Sequence] = ()) -> list[Vector]:
    """Isotropic complement a dual to an isotropic subspace I.

    Output a satisfies: a isotropic, dim a = dim I, a and I intersect
    trivially, a + I non-degenerate, and B(I_i, a_j) = delta_ij (for odd B
    this is the same as the pairing with the arguments swapped). Vectors in
    ``avoid`` are treated as the chosen metric complement h: all duals are
    produced orthogonal to them.

    Odd B follows the dual-vector-plus-correction recipe: duals of even
    I-vectors are corrected by odd I-vectors, duals of odd I-vectors need no
    correction. Even B applies the analogous per-parity correction with a
    half coefficient (characteristic zero).
    """
    space = form.space
    ideal = [linalg.vec(v) for v in ideal]
    if not ideal:
        return []
    for i, u in enumerate(ideal):
        for v in ideal[i:]:
            if form.value(u, v) != 0:
                raise ValueError("input subspace is not isotropic")
    if linalg.rank(ideal, space.dim) != len(ideal):
        raise ValueError("ideal vectors are linearly dependent")

    duals = _dual_vectors(form, ideal, [linalg.vec(w) for w in avoid])
    parities = [_homogeneous_parity(space, e) for e in ideal]
    gram = [[form.value(duals[i], duals[j]) for j in range(len(duals))] for i in range(len(duals))]

    out = []
    for i, d in enumerate(duals):
        corr = list(d)
        if form.degree == 1:
            if parities[i] == 0:
                for m, e in enumerate(ideal):
                    if parities[m] == 1 and gram[i][m] != 0:
                        corr = [x - gram[i][m] * y for x, y in zip(corr, e)]
        else:
            for m, e in enumerate(ideal):
                if gram[i][m] != 0:
                    corr = [x - HALF * gram[i][m] * y for x, y in zip(corr, e)]
        out.append(tuple(corr))

    for i in range(len(out)):
        for j in range(len(out)):
            if form.value(out[i], out[j]) != 0:
                raise DegenerateInput("correction failed to produce an isotropic complement")
            if form.value(ideal[i], out[j]) != (linalg.ONE if i == j else ZERO):
                raise DegenerateInput("dual pairing broke under correction")
    if linalg.rank(ideal + out, space.dim) != 2 * len(ideal):
        raise DegenerateInput("complement is not transverse to the ideal")
    return out


def build_xi(form: GradedBilinearForm, ideal: Sequence[Sequence], a_vectors: Sequence[Sequence],
             delta: int, a_space: SuperSpace | None = None,
             ideal_space: SuperSpace | None = None) -> tuple[GradedLinearMap, GradedLinearMap]:
    """The bijections xi_delta: I -> P_delta(a)* and xi: I -> a*.

    xi_delta(alpha)(P_delta(x)) = B(alpha, x); xi has the same matrix into a*
    with degree delta, and the target-side parity shift of xi is xi_delta.
    """
    space = form.space
    if a_space is None:
        a_space = SuperSpace(tuple((f"a{j}", _homogeneous_parity(space, v))
                                   for j, v in enumerate(a_vectors)))
    if ideal_space is None:
        ideal_space = SuperSpace(tuple((f"i{r}", _homogeneous_parity(space, v))
                                       for r, v in enumerate(ideal)))
    matrix = tuple(
        tuple(form.value(alpha, a_vectors[j]) for alpha in ideal)
        for j in range(len(a_vectors))
    )
    if linalg.rank(matrix, len(ideal)) != len(ideal):
        raise DegeneratePairing("pairing between the ideal and its complement is singular")
    xi_delta = GradedLinearMap(ideal_space, p_delta_dual(a_space, delta), 0, matrix)
    xi = GradedLinearMap(ideal_space, dual_space(a_space), delta, matrix)
    return xi_delta, xi


def _unit_index(v: Sequence) -> int | None:
    hits = [i for i, c in enumerate(v) if c != 0]
    if len(hits) == 1 and v[hits[0]] == 1:
        return hits[0]
    return None


def _block_space(g_space: SuperSpace, vectors: Sequence[Vector], prefix: str) -> SuperSpace:
    """Labels reuse g's labels where block vectors are unit vectors."""
    labels = []
    for j, v in enumerate(vectors):
        u = _unit_index(v)
        labels.append(g_space.label(u) if u is not None else f"{prefix}{j}")
    if len(set(labels)) != len(labels):
        labels = [f"{prefix}{j}" for j in range(len(vectors))]
    return SuperSpace(tuple((lab, _homogeneous_parity(g_space, v))
                            for lab, v in zip(labels, vectors)))


@dataclass(frozen=True)
class ExtractedMaps:
    """Components of the bracket along g = a + h + I."""

    a_space: SuperSpace
    h_space: SuperSpace
    ideal_space: SuperSpace
    a_table: SuperBracket
    h_table: SuperBracket
    lam: GradedBilinearMap        # a x a -> h
    mu: GradedBilinearMap         # a x a -> I
    gamma: GradedBilinearMap      # h x h -> I
    rho: tuple[GradedLinearMap, ...]    # a-indexed endomorphisms of h
    tau: tuple[GradedLinearMap, ...]    # a-indexed maps h -> I
    sigma: tuple[GradedLinearMap, ...]  # a-indexed endomorphisms of I


def extract_structure_maps(g: QuadraticLieSuperAlgebra, ideal: Sequence[Sequence],
                           a_vectors: Sequence[Sequence], h_vectors: Sequence[Sequence]) -> ExtractedMaps:
    """Split every basis bracket into its a / h / I components.

    Raises NotAnIdealSplit when a component lands outside the block structure
    forced by the ideal hypotheses ([x,u] with an a-component, nonzero [h,I]
    or [I,I], ...).
    """
    na, nh, nd = len(a_vectors), len(h_vectors), len(ideal)
    cols = [linalg.vec(v) for v in a_vectors] + [linalg.vec(v) for v in h_vectors] + [linalg.vec(v) for v in ideal]
    n = g.dim
    if na + nh + nd != n:
        raise ValueError("blocks do not fill the algebra")
    m = linalg.transpose(cols)
    m_inv = linalg.inverse(m)
    if m_inv is None:
        raise ValueError("a, h and I do not form a basis")

    a_space = _block_space(g.space, cols[:na], "a")
    h_space = _block_space(g.space, cols[na:na + nh], "h")
    ideal_space = _block_space(g.space, cols[na + nh:], "i")

    def comp(p, q):
        w = g.bracket.bracket(cols[p], cols[q])
        z = linalg.mat_vec(m_inv, w)
        return z[:na], z[na:na + nh], z[na + nh:]

    zero_a, zero_h, zero_i = linalg.zero_vec(na), linalg.zero_vec(nh), linalg.zero_vec(nd)

    a_tab = [[zero_a] * na for _ in range(na)]
    lam_tab = [[zero_h] * na for _ in range(na)]
    mu_tab = [[zero_i] * na for _ in range(na)]
    rho_cols = [[zero_h] * nh for _ in range(na)]
    tau_cols = [[zero_i] * nh for _ in range(na)]
    h_tab = [[zero_h] * nh for _ in range(nh)]
    gamma_tab = [[zero_i] * nh for _ in range(nh)]
    sigma_cols = [[zero_i] * nd for _ in range(na)]

    for p in range(n):
        for q in range(n):
            ca, ch, ci = comp(p, q)
            if p < na and q < na:
                a_tab[p][q], lam_tab[p][q], mu_tab[p][q] = ca, ch, ci
                continue
            in_h_p = na <= p < na + nh
            in_h_q = na <= q < na + nh
            in_i_p = p >= na + nh
            in_i_q = q >= na + nh
            if (p < na and in_h_q) or (q < na and in_h_p):
                if not linalg.vec_is_zero(ca):
                    raise NotAnIdealSplit(Violation("split-a-h", (p, q), ca,
                                                    "[a,h] has an a-component"))
                if p < na:
                    rho_cols[p][q - na], tau_cols[p][q - na] = ch, ci
                continue
            if in_h_p and in_h_q:
                if not linalg.vec_is_zero(ca):
                    raise NotAnIdealSplit(Violation("split-h-h", (p, q), ca,
                                                    "[h,h] has an a-component"))
                h_tab[p - na][q - na], gamma_tab[p - na][q - na] = ch, ci
                continue
            if (p < na and in_i_q) or (q < na and in_i_p):
                if not linalg.vec_is_zero(ca) or not linalg.vec_is_zero(ch):
                    raise NotAnIdealSplit(Violation("split-a-ideal", (p, q), (ca, ch),
                                                    "[a,I] leaves the ideal"))
                if p < na:
                    sigma_cols[p][q - na - nh] = ci
                continue
            # remaining blocks: [h,I], [I,h], [I,I] must vanish outright
            if not (linalg.vec_is_zero(ca) and linalg.vec_is_zero(ch) and linalg.vec_is_zero(ci)):
                raise NotAnIdealSplit(Violation("split-centraliser", (p, q), (ca, ch, ci),
                                                "[h,I] or [I,I] is nonzero"))

    def maps_from(cols_list, source, target):
        # build row-major from column lists; transpose would drop the row
        # count when the source is zero-dimensional
        return tuple(
            GradedLinearMap(source, target, a_space.parity(i),
                            tuple(tuple(col[r] for col in cols_list[i])
                                  for r in range(target.dim)))
            for i in range(na)
        )

    try:
        extracted = ExtractedMaps(
            a_space, h_space, ideal_space,
            SuperBracket(a_space, tuple(tuple(r) for r in a_tab)),
            SuperBracket(h_space, tuple(tuple(r) for r in h_tab)),
            GradedBilinearMap(a_space, a_space, h_space, tuple(tuple(r) for r in lam_tab)),
            GradedBilinearMap(a_space, a_space, ideal_space, tuple(tuple(r) for r in mu_tab)),
            GradedBilinearMap(h_space, h_space, ideal_space, tuple(tuple(r) for r in gamma_tab)),
            maps_from(rho_cols, h_space, h_space),
            maps_from(tau_cols, h_space, ideal_space),
            maps_from(sigma_cols, ideal_space, ideal_space),
        )
    except SuperquadError as exc:
        raise NotAnIdealSplit(Violation("split-grading", (), None, str(exc))) from exc

    for bl, name in ((extracted.lam, "lambda"), (extracted.mu, "mu"), (extracted.gamma, "gamma")):
        for check in (bl.check_even, bl.check_super_skew):
            v = check(name)
            if v is not None:
                raise NotAnIdealSplit(v)
    return extracted


@dataclass(frozen=True)
class DecompositionResult:
    a_basis: tuple[Vector, ...]
    h_basis: tuple[Vector, ...]
    ideal_basis: tuple[Vector, ...]
    maps: ExtractedMaps
    xi_delta: GradedLinearMap
    xi: GradedLinearMap
    context: DeltaContext
    extension: QuadraticLieSuperAlgebra
    isometry: GradedLinearMap


def _validate_ideal(g: QuadraticLieSuperAlgebra, ideal: list[Vector]) -> None:
    n = g.dim
    if not ideal:
        raise ClaimViolated("ideal-empty", message="the ideal must be nonzero")
    for r, v in enumerate(ideal):
        if len(v) != n:
            raise ClaimViolated("ideal-shape", message=f"vector {r} has wrong length")
        if g.space.vector_parity(v) is None:
            raise ClaimViolated("ideal-homogeneous", [Violation("ideal-homogeneous", (r,))])
    if linalg.rank(ideal, n) != len(ideal):
        raise ClaimViolated("ideal-independent", [Violation("ideal-independent")])
    for i, u in enumerate(ideal):
        for j, v in enumerate(ideal):
            if g.metric.value(u, v) != 0:
                raise ClaimViolated("ideal-isotropic", [Violation("ideal-isotropic", (i, j))])
            if not linalg.vec_is_zero(g.bracket.bracket(u, v)):
                raise ClaimViolated("ideal-abelian", [Violation("ideal-abelian", (i, j))])
    for p in range(n):
        for r, v in enumerate(ideal):
            w = g.bracket.bracket(linalg.unit_vec(n, p), v)
            if not linalg.in_span(ideal, w):
                raise ClaimViolated("ideal-invariant", [Violation("ideal-invariant", (p, r), w)])


def decompose(g: QuadraticLieSuperAlgebra, ideal: Sequence[Sequence]) -> DecompositionResult:
    """Split g along an isotropic abelian ideal and certify the rebuilt extension.

    Verifies the whole chain of structural claims (a is a Lie superalgebra
    with its two compatibility sums, sigma is the delta-coadjoint action
    through xi, mu satisfies the super cyclic condition, tau realises chi,
    h is quadratic of the same degree, each rho(x) is a skew derivation,
    deh1 holds) and finally that x + u + alpha -> x + u + xi_delta(alpha)
    maps g isometrically onto the double extension of the rebuilt context.
    """
    ideal = [linalg.vec(v) for v in ideal]
    _validate_ideal(g, ideal)
    delta = g.delta
    n = g.dim

    i_perp = orthogonal_complement(ideal, g.metric)
    chosen = linalg.extend_independent(ideal, i_perp)
    h_vectors = [i_perp[c] for c in chosen]
    gram_h = [[g.metric.value(u, v) for v in h_vectors] for u in h_vectors]
    if linalg.rank(gram_h, len(h_vectors)) != len(h_vectors):
        raise ClaimViolated("h-nondegenerate", [Violation("h-nondegenerate")])

    try:
        a_vectors = witt_complement(g.metric, ideal, avoid=h_vectors)
    except (DegenerateInput, ValueError) as exc:
        raise ClaimViolated("witt-complement", message=str(exc)) from exc

    maps = extract_structure_maps(g, ideal, a_vectors, h_vectors)
    na, nh, nd = len(a_vectors), len(h_vectors), len(ideal)
    pa = maps.a_space.parities

    try:
        a_alg = LieSuperAlgebra(maps.a_table)
    except ValidationError as exc:
        raise ClaimViolated("a-superalgebra", exc.violations) from exc

    # compatibility sums of the split Jacobi identity on a-triples
    for i in range(na):
        for j in range(na):
            for k in range(na):
                s1, s2, s3 = _cyclic_terms(pa[i], pa[j], pa[k])

                def h_piece(x, y, z):
                    return linalg.vec_add(maps.lam.right_vector(x, maps.a_table.table[y][z]),
                                          maps.rho[x].apply(maps.lam.value(y, z)))

                def i_piece(x, y, z):
                    t = maps.mu.right_vector(x, maps.a_table.table[y][z])
                    t = linalg.vec_add(t, maps.tau[x].apply(maps.lam.value(y, z)))
                    return linalg.vec_add(t, maps.sigma[x].apply(maps.mu.value(y, z)))

                for piece, claim in ((h_piece, "a-lambda-cyclic"), (i_piece, "a-mu-cyclic")):
                    total = linalg.vec_scale(s1, piece(i, j, k))
                    total = linalg.vec_add(total, linalg.vec_scale(s2, piece(j, k, i)))
                    total = linalg.vec_add(total, linalg.vec_scale(s3, piece(k, i, j)))
                    if not linalg.vec_is_zero(total):
                        raise ClaimViolated(claim, [Violation(claim, (i, j, k), total)])

    try:
        xi_delta, xi = build_xi(g.metric, ideal, a_vectors, delta,
                                a_space=maps.a_space, ideal_space=maps.ideal_space)
    except DegeneratePairing as exc:
        raise ClaimViolated("xi-bijective", message=str(exc)) from exc

    # h is quadratic of the same degree
    b_h = GradedBilinearForm(maps.h_space, delta,
                             tuple(tuple(g.metric.value(u, v) for v in h_vectors) for u in h_vectors))
    try:
        h_alg = QuadraticLieSuperAlgebra(LieSuperAlgebra(maps.h_table), b_h)
    except (ValidationError, SuperquadError) as exc:
        raise ClaimViolated("h-quadratic", message=str(exc)) from exc

    for i in range(na):
        if not is_derivation(maps.rho[i], maps.h_table):
            raise ClaimViolated("rho-derivation", [Violation("rho-derivation", (i,))])
        if not is_metric_skew(maps.rho[i], b_h):
            raise ClaimViolated("rho-skew", [Violation("rho-skew", (i,))])

    # sigma is the delta-coadjoint representation through xi
    rep = delta_coadjoint(a_alg, delta)
    for i in range(na):
        lhs = linalg.mat_mul(xi_delta.matrix, maps.sigma[i].matrix)
        rhs = linalg.mat_mul(rep.action[i].matrix, xi_delta.matrix)
        if lhs != rhs:
            raise ClaimViolated("sigma-coadjoint", [Violation("sigma-coadjoint", (i,))])

    # omega := xi o mu and its super cyclic condition
    omega = GradedBilinearMap(
        maps.a_space, maps.a_space, p_delta_dual(maps.a_space, delta),
        tuple(tuple(xi_delta.apply(maps.mu.value(i, j)) for j in range(na)) for i in range(na)))
    for i in range(na):
        for j in range(na):
            for k in range(na):
                sign = -1 if ((pa[j] + pa[k]) * pa[i]) % 2 else 1
                if omega.value(i, j)[k] != sign * omega.value(j, k)[i]:
                    raise ClaimViolated("mu-cyclic", [Violation("mu-cyclic", (i, j, k))])

    context = DeltaContext(delta, a_alg, h_alg, maps.rho,
                           GradedBilinearMap(maps.a_space, maps.a_space, h_alg.space, maps.lam.table),
                           omega)

    # tau realises chi and gamma realises Phi, through xi
    chi = derive_chi(context)
    for i in range(na):
        for m in range(nh):
            if xi_delta.apply(maps.tau[i].column(m)) != chi.value(i, m):
                raise ClaimViolated("tau-chi", [Violation("tau-chi", (i, m))])
    phi = derive_phi(context)
    for m in range(nh):
        for l in range(nh):
            if xi_delta.apply(maps.gamma.value(m, l)) != phi.value(m, l):
                raise ClaimViolated("gamma-phi", [Violation("gamma-phi", (m, l))])

    violations = validate_context(context)
    if violations:
        raise ClaimViolated("context", violations)

    ext = double_extend(context)

    # isometry x + u + alpha -> x + u + xi_delta(alpha): with the identity
    # pairing, its matrix in the split basis is the identity, so the claim is
    # that g's structure constants and metric in the (a, h, I) basis equal the
    # extension's exactly.
    cols = list(a_vectors) + list(h_vectors) + list(ideal)
    m_inv = linalg.inverse(linalg.transpose(cols))
    for p in range(n):
        for q in range(n):
            w = linalg.mat_vec(m_inv, g.bracket.bracket(cols[p], cols[q]))
            if w != ext.bracket.table[p][q]:
                raise ClaimViolated("isometry-bracket",
                                    [Violation("isometry-bracket", (p, q),
                                               linalg.vec_sub(w, ext.bracket.table[p][q]))])
    for p in range(n):
        for q in range(n):
            if g.metric.value(cols[p], cols[q]) != ext.metric.matrix[p][q]:
                raise ClaimViolated("isometry-metric",
                                    [Violation("isometry-metric", (p, q))])

    isometry = GradedLinearMap(g.space, ext.space, 0, m_inv)
    return DecompositionResult(
        tuple(a_vectors), tuple(h_vectors), tuple(ideal), maps,
        xi_delta, xi, context, ext, isometry,
    )
