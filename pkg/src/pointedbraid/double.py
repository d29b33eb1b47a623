"""The double D(V) = W + W* over Sigma = <(g_i, chi_i^{-1})> inside Gamma x Gamma-hat."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .abgroup import AbstractSubgroup, Bicharacter, FinAbGroup, QuadraticForm, Subgroup, annihilator
from .hopf import HopfAlgebra
from .linalg import rank
from .qls import BilinearFormV, QLSDatum, validate_datum
from .quadruple import EquivalenceResult, MetricQuadruple, is_equivalent
from .symcenter import symmetric_center


class NotSelfDual(ValueError):
    pass


def is_self_dual(V: QLSDatum) -> tuple:
    """(ok, pairing) where pairing[i] is the index whose label is the inverse of label i.

    Self-inverse labels pair with themselves; other labels are matched to
    their inverses in index order.
    """
    G = V.group
    labels = [V.label(i) for i in range(V.n)]
    pairing: list = [None] * V.n
    for i, lab in enumerate(labels):
        if pairing[i] is not None:
            continue
        inv = lab.inverse(G)
        if inv == lab:
            pairing[i] = i
            continue
        j = next((j for j in range(V.n) if pairing[j] is None and labels[j] == inv), None)
        if j is None:
            return False, None
        pairing[i], pairing[j] = j, i
    return True, tuple(pairing)


def ambient_group(G: FinAbGroup) -> FinAbGroup:
    """Gamma x Gamma-hat, a character being stored by its exponent vector."""
    return FinAbGroup(G.invariants + G.invariants)


def canonical_pairing(G: FinAbGroup) -> Bicharacter:
    """b((g, chi), (g', chi')) = chi(g') chi'(g) on Gamma x Gamma-hat."""
    k = G.rank
    T = [[Fraction(0)] * (2 * k) for _ in range(2 * k)]
    for i, m in enumerate(G.invariants):
        T[i][k + i] = T[k + i][i] = Fraction(1, m)
    return Bicharacter(ambient_group(G), tuple(map(tuple, T)))


def _split(G: FinAbGroup, x) -> tuple:
    k = G.rank
    return tuple(x[:k]), G.character(x[k:])


def sigma_generators(V: QLSDatum) -> list:
    return [tuple(g) + tuple(V.characters[i].inverse().exponents) for i, g in enumerate(V.degrees)]


def grading_group(V: QLSDatum) -> tuple:
    """(Sigma-perp, its order)."""
    G = V.group
    perp = annihilator(ambient_group(G), canonical_pairing(G), sigma_generators(V), side="right")
    return perp, perp.order


@dataclass(frozen=True)
class DoubleResult:
    source: QLSDatum
    pairing: tuple
    sigma: AbstractSubgroup
    q_sigma: QuadraticForm
    dv_datum: QLSDatum
    r_dv: BilinearFormV
    sigma_perp: Subgroup

    @property
    def grading_group_order(self) -> int:
        return self.sigma_perp.order

    @property
    def sigma_order(self) -> int:
        return self.sigma.group.order

    @property
    def dim_A(self) -> int:
        return self.sigma_order * 2 ** (2 * self.source.n)

    def quadruple(self) -> MetricQuadruple:
        return MetricQuadruple(self.dv_datum, self.q_sigma, self.r_dv)

    def to_dict(self) -> dict:
        return {
            "sigma_order": self.sigma_order,
            "sigma_invariants": list(self.sigma.group.invariants),
            "sigma_embedding": [list(e) for e in self.sigma.embedding],
            "sigma_perp_order": self.grading_group_order,
            "dim_A": self.dim_A,
            "symplectic_rank": rank(self.r_dv.rows()) if self.r_dv.n else 0,
            "pairing": [p + 1 for p in self.pairing],
            "r_dv": self.r_dv.to_strings(),
        }


def drinfeld_double(V: QLSDatum) -> DoubleResult:
    ok, pairing = is_self_dual(V)
    if not ok:
        raise NotSelfDual("self-duality required: the labels (g_i, chi_i) are not closed under inversion")
    G = V.group
    ctx = V.ctx
    n = V.n
    amb = ambient_group(G)
    gens = sigma_generators(V)
    sub = Subgroup.generated_by(amb, gens).abstract()
    A = sub.group
    emb = [_split(G, e) for e in sub.embedding]
    k = A.rank
    # r_Sigma((a, alpha), (b, beta)) = beta(a); on Sigma its diagonal is q_Sigma(g, chi) = chi(g)
    r_sigma = Bicharacter(A, tuple(tuple(emb[l][1].turn(emb[kk][0]) for l in range(k)) for kk in range(k)))
    q_sigma = QuadraticForm.from_function(A, lambda h: _split(G, sub.embed(h))[1].turn(_split(G, sub.embed(h))[0]))
    if r_sigma.quadratic_form() != q_sigma:
        raise AssertionError("r_Sigma does not diagonalize q_Sigma")
    phis = [A.character_from_function(lambda h, i=i: V.characters[i].turn(_split(G, sub.embed(h))[0]))
            for i in range(n)]
    s = [sub.coordinates(gens[i]) for i in range(n)]
    # W has labels (s_i, phi_i); the dual vector f_i has label (s_i^{-1}, phi_i^{-1}) = label of pairing[i]
    degrees = s + [s[pairing[i]] for i in range(n)]
    chars = phis + [phis[pairing[i]] for i in range(n)]
    dv = validate_datum(ctx, A, r_sigma, degrees, chars)
    # r(f_i, w_j) = ev(f_i, w_j); r(w_i, f_j) = ev(c(w_i ⊗ f_j)) = (g_{w_i} . f_j)(w_i)
    M = [[ctx.zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        M[n + i][i] = ctx.one
        M[i][n + i] = dv.chi(n + i, dv.degrees[i])
    r_dv = BilinearFormV(ctx, tuple(map(tuple, M)))
    perp, _ = grading_group(V)
    res = DoubleResult(V, pairing, sub, q_sigma, dv, r_dv, perp)
    res.quadruple()   # validates alternating + YD + diagonalization
    return res


def standard_block_check(res: DoubleResult, bound: int = 64) -> EquivalenceResult:
    """Compare r_dv with the duplicated-label model of the form.

    The model basis is y_i = w_i, y_{n+i} = f_{pairing[i]}, so y_i and y_{n+i}
    carry the same label, and r becomes [[0, -P], [P^T, 0]] with P the pairing
    permutation matrix.  Equivalence is decided independently by is_equivalent.
    """
    V = res.dv_datum
    n = res.source.n
    ctx = V.ctx
    perm = res.pairing
    degrees = list(V.degrees[:n]) * 2
    chars = list(V.characters[:n]) * 2
    model = validate_datum(ctx, V.group, V.r0, degrees, chars)
    M = [[ctx.zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        # f_i sits at position n + perm[i] of the model basis
        M[i][n + perm[i]] = res.r_dv[i, n + i]
        M[n + perm[i]][i] = res.r_dv[n + i, i]
    Qm = MetricQuadruple(model, res.q_sigma, BilinearFormV(ctx, tuple(map(tuple, M))))
    return is_equivalent(res.quadruple(), Qm, bound=bound)


def double_checks(res: DoubleResult, bound_dim: int = 256, bound_group: int = 64) -> dict:
    """All structural identities of the double, each as a boolean."""
    V = res.source
    G = V.group
    n = V.n
    sub = res.sigma
    b = canonical_pairing(G)
    sig_elems = sub.subgroup.elements
    out = {
        "sigma_isotropic": all(b.turn(x, y) == 0 for x in sig_elems for y in sig_elems),
        "sigma_in_perp": all(x in res.sigma_perp for x in sig_elems),
        "order_identity": sub.group.order * res.sigma_perp.order == G.order ** 2,
        "q_sigma_generators": all(res.q_sigma.turn(res.dv_datum.degrees[i]) == Fraction(1, 2) for i in range(n)),
        "r_dv_alternating": res.r_dv.is_alternating(),
        "r_dv_full_rank": n == 0 or rank(res.r_dv.rows()) == 2 * n,
        "double_self_dual": is_self_dual(res.dv_datum)[0],
        "v_perp_zero": len(symmetric_center(res.dv_datum, res.r_dv, check=False).v_perp) == 0,
    }
    out["standard_block_congruent"] = standard_block_check(res, bound=bound_group).status == "equivalent"
    if res.dim_A <= bound_dim:
        out["dim_A_materialized"] = HopfAlgebra(res.dv_datum).dim == res.dim_A
    return out
