import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import BASE_SAMPLES, E, random_yd_form, yd_forms
from oracles import brute_orthogonal_isos
from pointedbraid.abgroup import FinAbGroup, QuadraticForm
from pointedbraid.linalg import identity, inverse, matmul, rank, transpose
from pointedbraid.presentation import load_sample
from pointedbraid.qls import BilinearFormV, decompose_form, is_yd_morphism, validate_datum
from pointedbraid.quadruple import (EquivalenceWitness, MetricQuadruple, aut_br, cocycle_space,
                                    compose_witnesses, h2_inv, hopf_functoriality_check, induced_form_check,
                                    is_equivalent, normalize)
from pointedbraid.scalars import CyclotomicContext


def _random_graded_matrix(V, rng):
    """A random invertible f preserving the (g, chi) labels."""
    ctx = V.ctx
    n = V.n
    while True:
        f = [[ctx.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if V.label(i) == V.label(j):
                    f[i][j] = ctx.scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
        if n == 0 or rank(f) == n:
            return f


def _transport(Q, f):
    """The quadruple with form r o (f^{-1} ⊗ f^{-1}); f is then a witness Q -> result."""
    finv = inverse(f, Q.ctx) if Q.n else []
    return MetricQuadruple(Q.datum, Q.q, Q.r.congruent_image(finv))


# ---------------------------------------------------------------------------
# normalization

def test_normalize_examples():
    V, r1 = E(2, [[0, 1], [0, 0]])
    Q = normalize(V, r1)
    assert Q.r.to_strings() == [["0", "1/2"], ["-1/2", "0"]]
    V, r1 = E(2, [[1, 2], [2, 5]])
    assert normalize(V, r1).r.is_zero()
    V, r1 = E(2, [[0, 3], [-3, 0]])
    assert normalize(V, r1).r == r1


@pytest.mark.parametrize("name", BASE_SAMPLES)
def test_normalize_idempotent(name):
    p = load_sample(name)
    Q = normalize(p.datum, p.r1)
    assert normalize(Q.datum, Q.r) == Q
    assert normalize(Q.datum, Q.r).key() == Q.key()


@settings(max_examples=25)
@given(st.sampled_from(["e2_zero", "e3_mixed", "z2z2_pair", "z4_pair", "z2cube_pair"]), st.data())
def test_invariant_cocycle_perturbation(name, data):
    V = load_sample(name).datum
    r1 = data.draw(yd_forms(V))
    s = data.draw(yd_forms(V))
    s = (s + s.transpose()).scale(Fraction(1, 2))
    assert is_yd_morphism(s, V)[0]
    assert normalize(V, r1 + s.scale(2)) == normalize(V, r1)
    assert normalize(V, r1 + s.scale(2)).key() == normalize(V, r1).key()


def test_quadruple_rejects_non_alternating():
    V, r1 = E(2, [[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        MetricQuadruple(V, V.r0.quadratic_form(), r1)


# ---------------------------------------------------------------------------
# equivalence

def test_self_equivalence_witness_is_identity():
    p = load_sample("e2_symplectic")
    Q = normalize(p.datum, p.r1)
    res = is_equivalent(Q, Q)
    assert res.status == "equivalent"
    w = res.witness
    assert w.alpha == tuple(Q.group.generators())
    assert induced_form_check(Q, Q, w)


def test_minus_identity_same_sign_class():
    p = load_sample("e3_mixed")
    Q = normalize(p.datum, p.r1)
    ctx = Q.ctx
    G = Q.group
    idn = identity(ctx, Q.n)
    w1 = EquivalenceWitness(tuple(G.generators()), tuple(map(tuple, idn)))
    w2 = EquivalenceWitness(tuple(G.generators()), tuple(tuple(-x for x in r) for r in idn))
    assert induced_form_check(Q, Q, w2)
    assert w1.sign_class() == w2.sign_class()


def test_e2_zero_vs_symplectic():
    Qz = normalize(*E(2))
    Qs = normalize(*E(2, [[0, 1], [-1, 0]]))
    res = is_equivalent(Qz, Qs)
    assert res.status == "inequivalent"
    assert res.invariant == "zsym_semisimple"
    # cross-check: no scaled matrix with small entries carries zero to the symplectic form
    ctx = Qz.ctx
    vals = [ctx.scalar(Fraction(a, b)) for a in range(-2, 3) for b in (1, 2)]
    for entries in itertools.product(vals[:5], repeat=4):
        f = [[entries[0], entries[1]], [entries[2], entries[3]]]
        assert Qz.r.congruent_image(f) != Qs.r


@pytest.mark.parametrize("name", ["e2_mixed", "e3_mixed", "e3_alternating", "z4_pair", "z2z2_pair", "z2cube_pair",
                                  "z6_split", "double_e1", "double_z4_pair"])
def test_transported_forms_are_equivalent(name):
    p = load_sample(name)
    Q = normalize(p.datum, p.r1)
    rng = random.Random(name)
    for _ in range(3):
        Q2 = _transport(Q, _random_graded_matrix(Q.datum, rng))
        res = is_equivalent(Q, Q2)
        assert res.status == "equivalent"
        assert induced_form_check(Q, Q2, res.witness)
        back = is_equivalent(Q2, Q)
        assert back.status == "equivalent"
        assert induced_form_check(Q2, Q, back.witness)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["e3_mixed", "z4_pair", "z2z2_pair", "z2cube_pair"]), st.integers(0, 2 ** 32))
def test_equivalence_transitive_with_composition(name, seed):
    rng = random.Random(seed)
    p = load_sample(name)
    V = p.datum
    Q1 = normalize(V, random_yd_form(V, rng))
    Q2 = _transport(Q1, _random_graded_matrix(V, rng))
    Q3 = _transport(Q2, _random_graded_matrix(V, rng))
    a, b, c = is_equivalent(Q1, Q2), is_equivalent(Q2, Q3), is_equivalent(Q1, Q3)
    assert a.status == b.status == c.status == "equivalent"
    w = compose_witnesses(a.witness, b.witness, Q1.group, Q2.group, Q3.group)
    assert induced_form_check(Q1, Q3, w)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["e2_zero", "e3_mixed", "z4_pair", "z2z2_pair"]), st.data())
def test_equivalence_symmetric_on_random_pairs(name, data):
    V = load_sample(name).datum
    Q1 = normalize(V, data.draw(yd_forms(V)))
    Q2 = normalize(V, data.draw(yd_forms(V)))
    a, b = is_equivalent(Q1, Q2), is_equivalent(Q2, Q1)
    assert a.status == b.status
    assert a.status != "undecided"
    # rank of r is a congruence invariant
    if a.status == "equivalent":
        assert rank(Q1.r.rows()) == rank(Q2.r.rows())
        assert induced_form_check(Q1, Q2, a.witness)
        assert induced_form_check(Q2, Q1, b.witness)


def test_group_automorphism_witness():
    """Z/4 with r0(g,g) = i: the automorphism g -> g^3 is orthogonal only when q is preserved."""
    p = load_sample("z4_pair")
    Q = normalize(p.datum, p.r1)
    res = is_equivalent(Q, Q)
    assert res.status == "equivalent"
    G = Q.group
    isos = brute_orthogonal_isos(G, Q.q, G, Q.q)
    assert res.isomorphisms_tried <= len(isos)
    assert tuple(res.witness.alpha) in isos


def test_orthogonal_group_mismatch_inequivalent():
    ctx = CyclotomicContext(4)
    G = FinAbGroup((4,))
    q1 = QuadraticForm.from_function(G, lambda g: Fraction(g[0] ** 2, 4) % 1)
    q2 = QuadraticForm.from_function(G, lambda g: Fraction(3 * g[0] ** 2, 4) % 1)
    from pointedbraid.quadruple import quadruple_from_q
    Q1 = quadruple_from_q(ctx, q1, [], [], BilinearFormV.zero(ctx, 0))
    Q2 = quadruple_from_q(ctx, q2, [], [], BilinearFormV.zero(ctx, 0))
    assert is_equivalent(Q1, Q2).status == "inequivalent"
    assert is_equivalent(Q1, Q1).status == "equivalent"


def test_equivalence_bound_reports_undecided():
    p = load_sample("z2cube_pair")
    Q = normalize(p.datum, p.r1)
    res = is_equivalent(Q, Q, bound=1)
    assert res.status == "undecided"
    assert "bound" in res.reason


@pytest.mark.parametrize("name", ["e2_mixed", "e3_mixed", "z4_pair", "z2z2_pair", "z2cube_pair"])
def test_hopf_functoriality_of_witnesses(name):
    p = load_sample(name)
    Q = normalize(p.datum, p.r1)
    rng = random.Random(7)
    Q2 = _transport(Q, _random_graded_matrix(Q.datum, rng))
    w = is_equivalent(Q, Q2).witness
    rep = hopf_functoriality_check(Q, Q2, w)
    assert rep["status"] == "pass"
    assert rep["r0_ratio_symmetric"]


# ---------------------------------------------------------------------------
# cocycles and H^2_inv

@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_cocycle_space_e_n(n):
    V, _ = E(n)
    cs = cocycle_space(V)
    assert cs.dimension == n * (n + 1) // 2
    for b in cs.basis:
        assert b.is_symmetric()


@pytest.mark.parametrize("name", BASE_SAMPLES)
def test_cocycle_basis_antisymmetric_under_braiding(name):
    V = load_sample(name).datum
    for b in cocycle_space(V).basis:
        # (b o c)(x_i, x_j) = chi_j(g_i) b(x_j, x_i)
        for i in range(V.n):
            for j in range(V.n):
                assert V.chi(j, V.degrees[i]) * b[j, i] == -b[i, j]


def test_cocycle_space_all_characters_nontrivial():
    ctx = CyclotomicContext(4)
    G = FinAbGroup((4, 4))
    from pointedbraid.abgroup import Bicharacter
    r0 = Bicharacter(G, ((Fraction(1, 2), Fraction(1, 4)), (Fraction(3, 4), Fraction(0))))
    V = validate_datum(ctx, G, r0, [(1, 0)], [G.character([2, 1])])
    assert not (V.characters[0] * V.characters[0]).is_trivial()
    assert cocycle_space(V).dimension == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_h2_inv_e_n(n):
    V, _ = E(n)
    assert h2_inv(V).as_tuple() == (1, n * (n - 1) // 2)


def _alt_dim_by_filter(V):
    """Span of the alternating parts of YD elementary forms, filtered by hand."""
    ctx = V.ctx
    rows = []
    for i in range(V.n):
        for j in range(V.n):
            M = [[ctx.zero] * V.n for _ in range(V.n)]
            M[i][j] = ctx.one
            b = BilinearFormV.from_rows(ctx, M)
            alt = decompose_form(b)[1]
            if not alt.is_zero() and is_yd_morphism(alt, V)[0]:
                rows.append([x for row in alt.matrix for x in row])
    return rank(rows) if rows else 0


@pytest.mark.parametrize("name", BASE_SAMPLES)
def test_alt_dim_independent(name):
    V = load_sample(name).datum
    assert h2_inv(V).alt_dim == _alt_dim_by_filter(V)


def test_h2_inv_examples():
    assert h2_inv(load_sample("z2z2_single").datum).multiplier_order == 1
    inv = h2_inv(load_sample("z2cube_pair").datum)
    assert inv.quotient_invariants == (2, 2)
    assert inv.as_tuple() == (2, 1)
    assert h2_inv(load_sample("z3_pointed").datum).as_tuple() == (1, 0)


# ---------------------------------------------------------------------------
# braided autoequivalences

def test_aut_br_zero_form_accepts_all_invertible():
    Q = normalize(*E(3))
    A = aut_br(Q)
    assert A.orthogonal_part == [tuple(Q.group.generators())]
    rng = random.Random(3)
    for _ in range(5):
        f = _random_graded_matrix(Q.datum, rng)
        ok, rep = A.stabilizer_test(f)
        assert ok
        ok2, rep2 = A.stabilizer_test([[-x for x in r] for r in f])
        assert ok2 and rep2 == rep
    singular = [[Q.ctx.one] * 3 for _ in range(3)]
    assert not A.stabilizer_test(singular)[0]


def test_aut_br_symplectic_accepts_exactly_symplectic():
    Q = normalize(*E(2, [[0, 1], [-1, 0]]))
    A = aut_br(Q)
    ctx = Q.ctx
    J = [[ctx.zero, ctx.one], [-ctx.one, ctx.zero]]
    vals = [ctx.scalar(Fraction(a, b)) for a in range(-2, 3) for b in (1, 2)]
    for entries in itertools.product(vals, repeat=4):
        f = [[entries[0], entries[1]], [entries[2], entries[3]]]
        sym = matmul(matmul(transpose(f), J, ctx), f, ctx) == J
        assert A.stabilizer_test(f)[0] == sym


def test_aut_br_trivial_quadruple():
    ctx = CyclotomicContext(2)
    G = FinAbGroup(())
    from pointedbraid.abgroup import Bicharacter
    V = validate_datum(ctx, G, Bicharacter(G, ()), [], [])
    Q = normalize(V, BilinearFormV.zero(ctx, 0))
    A = aut_br(Q)
    assert A.orthogonal_part == [()]
    assert A.stabilizer_test([])[0]
