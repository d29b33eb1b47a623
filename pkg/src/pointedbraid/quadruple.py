"""Metric quadruples (Gamma, q, V, r): normalization, equivalence, cocycles, H^2_inv."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from .abgroup import (FinAbGroup, GroupTooLarge, QuadraticForm, Subgroup,
                      diagonalize_quadratic, orthogonal_isos, quotient, schur_multiplier_order,
                      source_map)
from .hopf import HopfAlgebra, _acc, bits
from .linalg import Matrix, identity, inverse, matmul, nullspace, rank, row_basis, rref, solve, transpose, zeros
from .qls import BilinearFormV, QLSDatum, decompose_form, is_yd_morphism, validate_datum
from .rform import InvalidForm, RForm
from .scalars import CyclotomicContext


@dataclass(frozen=True)
class MetricQuadruple:
    """(Gamma, q, V, r) with q = diag(r0) and r alternating; r0 is a recorded diagonalization."""

    datum: QLSDatum
    q: QuadraticForm
    r: BilinearFormV

    def __post_init__(self):
        if not self.r.is_alternating():
            raise ValueError("the form of a metric quadruple must be alternating")
        ok, violations = is_yd_morphism(self.r, self.datum)
        if not ok:
            raise InvalidForm(violations)
        if self.datum.r0.quadratic_form() != self.q:
            raise ValueError("recorded r0 does not diagonalize q")

    @property
    def group(self) -> FinAbGroup:
        return self.datum.group

    @property
    def ctx(self) -> CyclotomicContext:
        return self.datum.ctx

    @property
    def n(self) -> int:
        return self.datum.n

    def key(self) -> tuple:
        """Everything that defines the quadruple (r0 is only a recorded choice)."""
        return (self.group, self.q, self.datum.degrees, self.r.matrix)


def normalize(datum: QLSDatum, r1: BilinearFormV) -> MetricQuadruple:
    ok, violations = is_yd_morphism(r1, datum)
    if not ok:
        raise InvalidForm(violations)
    _, alt = decompose_form(r1)
    return MetricQuadruple(datum, datum.r0.quadratic_form(), alt)


def quadruple_from_q(ctx: CyclotomicContext, q: QuadraticForm, degrees, characters,
                     r: BilinearFormV) -> MetricQuadruple:
    r0 = diagonalize_quadratic(q)
    if r0 is None:
        raise ValueError("quadratic form is not diagonalizable")
    return MetricQuadruple(validate_datum(ctx, q.group, r0, degrees, characters), q, r)


# ---------------------------------------------------------------------------
# congruence normal forms

def _alternating_normal_basis(A: Matrix, ctx: CyclotomicContext) -> Matrix:
    """Invertible P with P^T A P = J_k ⊕ 0, J_k = [[0, I], [-I, 0]] (k = rank/2)."""
    n = len(A)
    vecs = [[ctx.one if i == j else ctx.zero for i in range(n)] for j in range(n)]

    def form(u, v):
        acc = ctx.zero
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if v[j] and A[i][j]:
                        acc = acc + u[i] * A[i][j] * v[j]
        return acc

    es, fs, rest = [], [], list(vecs)
    while True:
        pair = None
        for a in range(len(rest)):
            for b in range(a + 1, len(rest)):
                if form(rest[a], rest[b]):
                    pair = (a, b)
                    break
            if pair:
                break
        if pair is None:
            break
        a, b = pair
        e, f = rest[a], rest[b]
        c = form(e, f).inverse()
        f = [x * c for x in f]
        others = [v for k, v in enumerate(rest) if k not in pair]
        new = []
        for v in others:
            # v - A(v, f) e + A(v, e) f makes v orthogonal to e and f
            ve, vf = form(v, e), form(v, f)
            new.append([x - vf * y + ve * z for x, y, z in zip(v, e, f)])
        es.append(e)
        fs.append(f)
        rest = new
    cols = es + fs + rest
    return transpose(cols)


def _pairing_normal_bases(B: Matrix, ctx: CyclotomicContext) -> tuple:
    """Invertible P, Q with P^T B Q = [[I_k, 0], [0, 0]] for a nonempty m x c matrix B."""
    m, c = len(B), len(B[0])
    R, pivots = rref(B)
    qs = [[ctx.one if t == p else ctx.zero for t in range(c)] for p in pivots]
    qs += nullspace(B, ctx, ncols=c)
    cols = [[B[i][p] for i in range(m)] for p in pivots]   # B q_j, independent
    ps = []
    for j in range(len(pivots)):
        ps.append(solve(cols, [ctx.one if t == j else ctx.zero for t in range(len(pivots))], ctx))
    ps += nullspace(transpose(B), ctx, ncols=m)
    return transpose(ps), transpose(qs)


def _submatrix(M, rows, cols) -> Matrix:
    return [[M[i][j] for j in cols] for i in rows]


@dataclass(frozen=True)
class EquivalenceWitness:
    alpha: tuple     # images of the generators of the source group
    f: tuple         # n x n matrix, column i = image of x_i in the x'_j basis

    def sign_class(self) -> tuple:
        """Canonical representative of {(alpha, f), (alpha, -f)}."""
        for row in self.f:
            for x in row:
                if x:
                    lead = next(c for c in x.coeffs if c)
                    f = self.f if lead > 0 else tuple(tuple(-y for y in r) for r in self.f)
                    return self.alpha, f
        return self.alpha, self.f

    def to_dict(self) -> dict:
        return {"alpha": [list(g) for g in self.alpha],
                "f": [[x.to_expr() for x in row] for row in self.f]}


@dataclass
class EquivalenceResult:
    status: str                      # "equivalent" | "inequivalent" | "undecided"
    witness: Optional[EquivalenceWitness] = None
    reason: str = ""
    invariant: Optional[str] = None
    isomorphisms_tried: int = 0

    @property
    def equivalent(self) -> Optional[bool]:
        return {"equivalent": True, "inequivalent": False}.get(self.status)

    def to_dict(self) -> dict:
        return {"status": self.status, "reason": self.reason, "invariant": self.invariant,
                "isomorphisms_tried": self.isomorphisms_tried,
                "witness": self.witness.to_dict() if self.witness else None}


def _label_blocks(labels: Sequence) -> dict:
    out: dict = {}
    for i, d in enumerate(labels):
        out.setdefault(d, []).append(i)
    return out


def witness_for_alpha(Q: MetricQuadruple, Q2: MetricQuadruple, alpha: Sequence) -> Optional[EquivalenceWitness]:
    """A graded f with r2(f u, f v) = r(u, v) over the given alpha, or None.

    r pairs the (g, chi)-isotypic block only with the (g^{-1}, chi^{-1}) block,
    so the problem splits into independent pieces: a rectangular pairing for
    a label distinct from its inverse (classified by rank), an alternating
    block for a self-inverse label (classified by rank as well).
    """
    G, G2 = Q.group, Q2.group
    ctx = Q.ctx
    n = Q.n
    if n != Q2.n:
        return None
    gens = G.generators()

    # labels compared on Gamma: (alpha(g_i), chi_i) against (g'_j, chi'_j o alpha)
    src = _label_blocks([(source_map(alpha, G2, g), tuple(c.turn(e) for e in gens))
                          for g, c in zip(Q.datum.degrees, Q.datum.characters)])
    dst = _label_blocks([(g, tuple(c.turn(source_map(alpha, G2, e)) for e in gens))
                          for g, c in zip(Q2.datum.degrees, Q2.datum.characters)])
    if {d: len(v) for d, v in src.items()} != {d: len(v) for d, v in dst.items()}:
        return None

    def inv(d):
        return G2.neg(d[0]), tuple((-t) % 1 for t in d[1])

    M, M2 = Q.r.matrix, Q2.r.matrix
    f = zeros(ctx, n, n)
    done = set()
    for d in sorted(src):
        if d in done:
            continue
        dinv = inv(d)
        I, J = src[d], dst[d]
        if dinv == d:
            A = _submatrix(M, I, I)
            A2 = _submatrix(M2, J, J)
            if rank(A) != rank(A2):
                return None
            P = _alternating_normal_basis(A, ctx)
            P2 = _alternating_normal_basis(A2, ctx)
            block = matmul(P2, inverse(P, ctx), ctx)
            for a, j in enumerate(J):
                for b, i in enumerate(I):
                    f[j][i] = block[a][b]
            done.add(d)
        else:
            Ii, Ji = src.get(dinv, []), dst.get(dinv, [])
            B = _submatrix(M, I, Ii)
            B2 = _submatrix(M2, J, Ji)
            rk = rank(B) if Ii else 0
            rk2 = rank(B2) if Ji else 0
            if rk != rk2:
                return None
            if Ii:
                P, Qm = _pairing_normal_bases(B, ctx)
                P2, Qm2 = _pairing_normal_bases(B2, ctx)
                fd = matmul(P2, inverse(P, ctx), ctx)
                fdi = matmul(Qm2, inverse(Qm, ctx), ctx)
                for a, j in enumerate(Ji):
                    for b, i in enumerate(Ii):
                        f[j][i] = fdi[a][b]
            else:
                fd = identity(ctx, len(I))
            for a, j in enumerate(J):
                for b, i in enumerate(I):
                    f[j][i] = fd[a][b]
            done.add(d)
            done.add(dinv)
    if Q2.r.congruent_image(f).matrix != Q.r.matrix:
        raise AssertionError("constructed congruence does not transport the form")
    return EquivalenceWitness(tuple(alpha), tuple(tuple(row) for row in f))


def is_equivalent(Q: MetricQuadruple, Q2: MetricQuadruple, bound: int = 64) -> EquivalenceResult:
    if Q.n != Q2.n:
        return EquivalenceResult("inequivalent", reason=f"dim V differs ({Q.n} vs {Q2.n})", invariant="dim_V")
    G, G2 = Q.group, Q2.group
    if G.order != G2.order or G.elementary_divisors() != G2.elementary_divisors():
        return EquivalenceResult("inequivalent", reason="groups are not isomorphic", invariant="group")
    ss, ss2 = rank(Q.r.rows()) == Q.n, rank(Q2.r.rows()) == Q2.n
    if ss != ss2:
        return EquivalenceResult("inequivalent", invariant="zsym_semisimple",
                                 reason=f"zsym_semisimple differs ({ss} vs {ss2})")
    if rank(Q.r.rows()) != rank(Q2.r.rows()):
        return EquivalenceResult("inequivalent", invariant="rank_r", reason="ranks of r differ")
    if Counter(Q.q.turn(g) for g in G.elements()) != Counter(Q2.q.turn(g) for g in G2.elements()):
        return EquivalenceResult("inequivalent", invariant="q_values", reason="value distributions of q differ")
    try:
        isos = orthogonal_isos(G, Q.q, G2, Q2.q, bound=bound)
    except GroupTooLarge as exc:
        return EquivalenceResult("undecided", reason=f"undecided at bound: {exc}")
    for k, alpha in enumerate(isos):
        w = witness_for_alpha(Q, Q2, alpha)
        if w is not None:
            return EquivalenceResult("equivalent", witness=w, isomorphisms_tried=k + 1)
    if not isos:
        return EquivalenceResult("inequivalent", invariant="orthogonal_isomorphism",
                                 reason="no orthogonal group isomorphism")
    return EquivalenceResult("inequivalent", invariant="congruence", isomorphisms_tried=len(isos),
                             reason="no orthogonal isomorphism admits a congruence of the forms")


def induced_form_check(Q: MetricQuadruple, Q2: MetricQuadruple, w: EquivalenceWitness) -> bool:
    """r2 o (f ⊗ f) == r and q2 o alpha == q, plus the degree grading of f."""
    G2 = Q2.group
    if any(Q2.q.turn(source_map(w.alpha, G2, g)) != Q.q.turn(g) for g in Q.group.elements()):
        return False
    for i, gi in enumerate(Q.datum.degrees):
        d = source_map(w.alpha, G2, gi)
        for j, gj in enumerate(Q2.datum.degrees):
            if w.f[j][i] and gj != d:
                return False
    return Q2.r.congruent_image([list(r) for r in w.f]).matrix == Q.r.matrix


def compose_witnesses(w1: EquivalenceWitness, w2: EquivalenceWitness, source: FinAbGroup,
                      middle: FinAbGroup, target: FinAbGroup) -> EquivalenceWitness:
    """w2 o w1 for source -> middle -> target."""
    alpha = tuple(source_map(w2.alpha, target, source_map(w1.alpha, middle, e))
                  for e in source.generators())
    ctx = w1.f[0][0].ctx if w1.f else None
    f = matmul([list(r) for r in w2.f], [list(r) for r in w1.f], ctx)
    return EquivalenceWitness(alpha, tuple(tuple(r) for r in f))


# ---------------------------------------------------------------------------
# Hopf-level functoriality

def hopf_functoriality_check(Q: MetricQuadruple, Q2: MetricQuadruple, w: EquivalenceWitness,
                             bound: int = 64) -> dict:
    """Verify that (alpha, f) induces a Hopf map F: H -> H2 with r2 o (F ⊗ F) = r_tilde.

    r_tilde is the r-form built from (r0_2 o (alpha x alpha), r).  The map F is a
    Hopf map only when the characters are transported as well; otherwise the
    check is reported as not applicable.
    """
    V, V2 = Q.datum, Q2.datum
    G, G2 = V.group, V2.group
    H, H2 = HopfAlgebra(V), HopfAlgebra(V2)
    if max(H.dim, H2.dim) > bound:
        return {"status": "skipped", "reason": f"dim exceeds {bound}"}
    for i in range(V.n):
        for j in range(V2.n):
            if w.f[j][i]:
                if any(V2.characters[j].turn(source_map(w.alpha, G2, e)) != V.characters[i].turn(e)
                       for e in G.generators()):
                    return {"status": "not-applicable", "reason": "characters are not transported by alpha"}
    ctx = V.ctx

    def F_basis(b) -> dict:
        g, P = b
        el = H2.group_element(source_map(w.alpha, G2, g))
        for i in bits(P):
            xi = H2.element({(G2.identity, 1 << j): w.f[j][i] for j in range(V2.n) if w.f[j][i]})
            el = el * xi
        return el.terms

    images = {b: F_basis(b) for b in H.basis}
    # algebra map on basis pairs
    for a in H.basis:
        for b in H.basis:
            m = H.mono_mult(a, b)
            lhs: dict = {}
            if m is not None:
                for k, c in images[m[1]].items():
                    _acc(lhs, k, c * ctx.root(m[0]))
            rhs = (H2.element(images[a]) * H2.element(images[b])).terms
            if lhs != rhs:
                return {"status": "fail", "reason": "F is not multiplicative"}
    # coalgebra map
    for a in H.basis:
        lhs = H2.comultiply(H2.element(images[a])).terms
        rhs: dict = {}
        for t, l, r in H.mono_coproduct(a):
            for kl, cl in images[l].items():
                for kr, cr in images[r].items():
                    _acc(rhs, (kl, kr), ctx.root(t) * cl * cr)
        if lhs != rhs:
            return {"status": "fail", "reason": "F is not comultiplicative"}
    # r-forms
    r0t = V2.r0.pullback(w.alpha, G)
    tilde = RForm(V.with_group_data(r0t), Q.r, algebra=None)
    r2 = RForm(V2, Q2.r, algebra=H2)
    for a in H.basis:
        for b in H.basis:
            val = ctx.zero
            for ka, ca in images[a].items():
                for kb, cb in images[b].items():
                    v = r2.value(ka, kb)
                    if v:
                        val = val + ca * cb * v
            if val != tilde.value(a, b):
                return {"status": "fail", "reason": f"r-forms differ at {a}, {b}"}
    # r0' o (alpha x alpha) / r0 is the alternation of the correcting invariant cocycle
    mu = r0t.ratio(V.r0)
    return {"status": "pass", "r0_ratio_symmetric": mu.is_symmetric()}


# ---------------------------------------------------------------------------
# cocycles and invariant cohomology

@dataclass(frozen=True)
class CocycleSpace:
    basis: tuple
    dimension: int


def _solve_forms(V: QLSDatum, equations: list) -> list:
    """Forms whose n^2 entries satisfy the given linear equations (rows over index i*n+j)."""
    n = V.n
    ctx = V.ctx
    if n == 0:
        return []
    ker = nullspace(equations, ctx, ncols=n * n) if equations else \
        [[ctx.one if k == l else ctx.zero for k in range(n * n)] for l in range(n * n)]
    ker = row_basis(ker) if ker else []
    return [BilinearFormV(ctx, tuple(tuple(v[i * n + j] for j in range(n)) for i in range(n))) for v in ker]


def cocycle_space(V: QLSDatum) -> CocycleSpace:
    """Forms a with a_ij = -chi_j(g_i) a_ji and a_ij = 0 unless chi_i chi_j = eps."""
    n = V.n
    ctx = V.ctx
    eqs = []
    for i in range(n):
        for j in range(n):
            row = [ctx.zero] * (n * n)
            row[i * n + j] = row[i * n + j] + 1
            row[j * n + i] = row[j * n + i] + V.chi(j, V.degrees[i])
            if any(row):
                eqs.append(row)
            if not (V.characters[i] * V.characters[j]).is_trivial():
                row = [ctx.zero] * (n * n)
                row[i * n + j] = ctx.one
                eqs.append(row)
    basis = _solve_forms(V, eqs)
    return CocycleSpace(tuple(basis), len(basis))


def alternating_yd_forms(V: QLSDatum) -> list:
    n = V.n
    ctx = V.ctx
    eqs = []
    for i in range(n):
        for j in range(n):
            row = [ctx.zero] * (n * n)
            row[i * n + j] = row[i * n + j] + 1
            row[j * n + i] = row[j * n + i] + 1
            eqs.append(row)
            yd = (V.characters[i] * V.characters[j]).is_trivial() and \
                not any(V.group.add(V.degrees[i], V.degrees[j]))
            if not yd:
                row = [ctx.zero] * (n * n)
                row[i * n + j] = ctx.one
                eqs.append(row)
    return _solve_forms(V, eqs)


@dataclass(frozen=True)
class H2Inv:
    multiplier_order: int
    alt_dim: int
    gamma0: Subgroup
    quotient_invariants: tuple

    def as_tuple(self) -> tuple:
        return self.multiplier_order, self.alt_dim

    def to_dict(self) -> dict:
        return {"multiplier_order": self.multiplier_order, "alt_dim": self.alt_dim,
                "gamma0_order": self.gamma0.order, "quotient_invariants": list(self.quotient_invariants)}


def h2_inv(V: QLSDatum) -> H2Inv:
    G = V.group
    g0 = Subgroup.generated_by(G, V.degrees)
    Qt = quotient(G, g0)
    return H2Inv(schur_multiplier_order(Qt.group), len(alternating_yd_forms(V)), g0, Qt.group.invariants)


# ---------------------------------------------------------------------------
# braided autoequivalences

@dataclass
class AutBr:
    quadruple: MetricQuadruple
    orthogonal_part: list
    witnesses: list

    def stabilizer_test(self, f: Matrix) -> tuple:
        """(accepted, sign-class representative) for f in Aut(V, r)."""
        Q = self.quadruple
        V = Q.datum
        n = V.n
        if len(f) != n or any(len(row) != n for row in f):
            return False, None
        for i in range(n):
            for j in range(n):
                if f[j][i] and V.label(j) != V.label(i):
                    return False, None
        if n and rank(f) != n:
            return False, None
        if Q.r.congruent_image(f).matrix != Q.r.matrix:
            return False, None
        G = Q.group
        w = EquivalenceWitness(tuple(G.generators()), tuple(tuple(r) for r in f))
        return True, w.sign_class()[1]


def aut_br(Q: MetricQuadruple, bound: int = 64) -> AutBr:
    isos = orthogonal_isos(Q.group, Q.q, Q.group, Q.q, bound=bound)
    part, wits = [], []
    for alpha in isos:
        w = witness_for_alpha(Q, Q, alpha)
        if w is not None:
            part.append(alpha)
            wits.append(w)
    return AutBr(Q, part, wits)
