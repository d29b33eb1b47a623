"""Acceptance gate: ten criteria, zero tolerance, one PASS/FAIL line each.

The verdict lines are printed in the terminal summary (see conftest.py);
``python scripts/run_acceptance.py`` runs only this file.
"""
import itertools
import random
import time
from fractions import Fraction

import pytest

from conftest import BASE_SAMPLES, E, random_yd_form
from oracles import ExpandedRForm
from pointedbraid.abgroup import Subgroup
from pointedbraid.double import ambient_group, double_checks, drinfeld_double, sigma_generators
from pointedbraid.hopf import HopfAlgebra, verify_hopf_axioms
from pointedbraid.linalg import rank
from pointedbraid.presentation import load_sample, sample_names
from pointedbraid.qls import BilinearFormV, decompose_form, form_as_row, is_yd_morphism, yd_form_basis
from pointedbraid.quadruple import MetricQuadruple, h2_inv, is_equivalent, normalize
from pointedbraid.rform import (RForm, extension_comodule, ribbon_element, ribbon_structures,
                                squared_braiding, standard_test_comodules, twist_compatible, verify_cqt)
from pointedbraid.symcenter import hsym_bruteforce, hsym_predicted, symmetric_center

ALL = sample_names()


def _dim(name):
    p = load_sample(name)
    return p.group.order * 2 ** p.n


# ---------------------------------------------------------------------------

@pytest.mark.criterion(1, "Hopf axioms exhaustive on E(1..3), Z/4 and Z/2xZ/2 data; dim = |G| 2^n; < 10 s")
def test_criterion_1_hopf_axioms():
    data = [E(1)[0], E(2)[0], E(3)[0], load_sample("z4_pair").datum, load_sample("z2z2_pair").datum]
    t0 = time.perf_counter()
    for V in data:
        H = HopfAlgebra(V)
        rep = verify_hopf_axioms(H)
        assert rep["mode"] == "exhaustive"
        assert rep["status"] == "pass", rep
        assert len(rep["axioms"]) == 5 and all(a["status"] == "pass" for a in rep["axioms"])
        assert H.dim == rep["dim"] == V.group.order * 2 ** V.n
    assert time.perf_counter() - t0 < 10


@pytest.mark.criterion(2, "r-forms from >= 5 random r1 per sample pass verify_cqt FULL; FULL and H1 agree; < 60 s")
def test_criterion_2_rform_axioms():
    t0 = time.perf_counter()
    names = [n for n in ALL if _dim(n) <= 64]
    assert set(BASE_SAMPLES) <= set(names)
    for name in names:
        p = load_sample(name)
        H = HopfAlgebra(p.datum)
        rng = random.Random(name)
        forms = [p.r1] + [random_yd_form(p.datum, rng) for _ in range(5)]
        for r1 in forms:
            r = RForm(p.datum, r1, algebra=H)
            full = verify_cqt(r, mode="full")
            h1 = verify_cqt(r, mode="h1")
            assert full["triples"] == "exhaustive"
            assert full["status"] == "pass", (name, full)
            assert [a["status"] for a in full["axioms"]] == [a["status"] for a in h1["axioms"]]
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(3, "r-forms built from identical (r0, r1) have identical basis-pair tables")
def test_criterion_3_uniqueness():
    for name in ["e1", "e2_mixed", "e3_mixed", "z4_pair", "z2z2_pair", "z2cube_pair", "z6_split"]:
        p = load_sample(name)
        a = RForm(p.datum, p.r1)
        b = RForm(p.datum, p.r1, algebra=HopfAlgebra(p.datum))
        ta, tb = a.table(), b.table()
        assert ta == tb
        oracle = ExpandedRForm(p.datum, p.r1)
        for (x, y), v in ta.items():
            assert v == oracle.value(x, y)


@pytest.mark.criterion(4, "E(n) accepts exactly an n^2-dimensional space of r1, n = 1, 2, 3")
def test_criterion_4_e_n_count():
    for n in (1, 2, 3):
        V, _ = E(n)
        ctx = V.ctx
        basis = yd_form_basis(V)
        assert len(basis) == n * n
        assert rank([form_as_row(b) for b in basis]) == n * n
        # every elementary matrix is accepted and yields a valid r-form
        for i, j in itertools.product(range(n), repeat=2):
            M = [[ctx.one if (a, b) == (i, j) else ctx.zero for b in range(n)] for a in range(n)]
            b = BilinearFormV.from_rows(ctx, M)
            assert is_yd_morphism(b, V)[0]
            if n <= 2:
                assert verify_cqt(RForm(V, b))["status"] == "pass"


@pytest.mark.criterion(5, "symmetric center: B(V-perp)#k[G-perp] equals the brute-force solution set; E(n) symmetric iff r1 symmetric")
def test_criterion_5_symmetric_center():
    for name in ALL:
        p = load_sample(name)
        H = HopfAlgebra(p.datum)
        if H.dim > 128:
            continue
        forms = [p.r1]
        if H.dim <= 32:
            forms.append(random_yd_form(p.datum, random.Random(name)))
        for r1 in forms:
            r = RForm(p.datum, r1, algebra=H)
            res = symmetric_center(p.datum, r1)
            assert hsym_bruteforce(r) == hsym_predicted(res, H), name
    rng = random.Random(5)
    for n in (1, 2, 3):
        for _ in range(4):
            V, _ = E(n)
            r1 = random_yd_form(V, rng)
            if rng.random() < 0.5:
                r1 = r1 + r1.transpose()
            res = symmetric_center(V, r1)
            assert res.is_symmetric == r1.is_symmetric()
            H = HopfAlgebra(V)
            sym_bf = len(hsym_bruteforce(RForm(V, r1, algebra=H))) == H.dim
            assert sym_bf == r1.is_symmetric()


def _pm1_count(V):
    return sum(1 for c in V.group.characters() if c.is_pm1() and all(c.turn(g) == Fraction(1, 2) for g in V.degrees))


@pytest.mark.criterion(6, "ribbon count = #{gamma: gamma(g_i) = -1} >= 1; twist compatible on shipped test comodules")
def test_criterion_6_ribbon():
    for name in ALL:
        p = load_sample(name)
        got = ribbon_structures(p.datum)
        assert len(got) == _pm1_count(p.datum) >= 1
    assert len(ribbon_structures(E(3)[0])) == 1
    assert len(ribbon_structures(load_sample("z2z2_single").datum)) == 2
    for name in ["e1", "e2_mixed", "e3_mixed", "z4_pair", "z2z2_single", "z2z2_pair", "z2cube_pair"]:
        p = load_sample(name)
        H = HopfAlgebra(p.datum)
        r = RForm(p.datum, p.r1, algebra=H)
        tests = standard_test_comodules(H)
        for rc in ribbon_structures(p.datum):
            alpha = ribbon_element(r, rc.character)
            for X in tests:
                for Y in tests:
                    assert twist_compatible(r, alpha, X, Y)


@pytest.mark.criterion(7, "squared braiding of extension comodules = id + s (p ⊗ p')(i ⊗ i'), s = r1 - r1 o tau")
def test_criterion_7_squared_braiding():
    for name in ALL:
        p = load_sample(name)
        if _dim(name) > 256:
            continue
        H = HopfAlgebra(p.datum)
        ctx = p.ctx
        forms = [p.r1, random_yd_form(p.datum, random.Random(name))] if H.dim <= 64 else [p.r1]
        for r1 in forms:
            r = RForm(p.datum, r1, algebra=H)
            ext = [extension_comodule(H, i) for i in range(p.n)]
            for i, j in itertools.product(range(p.n), repeat=2):
                S = squared_braiding(r, ext[i], ext[j])
                expected = [[ctx.one if a == b else ctx.zero for b in range(4)] for a in range(4)]
                expected[0][3] = r1[i, j] - r1[j, i]
                assert S == expected, (name, i, j)


@pytest.mark.criterion(8, "normalize idempotent; r1 + 2s gives the same quadruple; E(2) zero vs symplectic inequivalent by zsym_semisimple")
def test_criterion_8_normalization():
    rng = random.Random(8)
    for name in BASE_SAMPLES:
        p = load_sample(name)
        Q = normalize(p.datum, p.r1)
        assert normalize(Q.datum, Q.r) == Q
        for _ in range(3):
            r1 = random_yd_form(p.datum, rng)
            s = random_yd_form(p.datum, rng)
            s = (s + s.transpose()).scale(Fraction(1, 2))
            assert normalize(p.datum, r1 + s.scale(2)) == normalize(p.datum, r1)
    res = is_equivalent(normalize(*E(2)), normalize(*E(2, [[0, 1], [-1, 0]])))
    assert res.status == "inequivalent"
    assert res.invariant == "zsym_semisimple"


def _alt_dim_filter_and_rank(V):
    rows = []
    for b in yd_form_basis(V) + [BilinearFormV.from_rows(V.ctx, [[V.ctx.one if (a, c) == (i, j) else 0
                                                                   for c in range(V.n)] for a in range(V.n)])
                                 for i in range(V.n) for j in range(V.n)]:
        alt = decompose_form(b)[1]
        if is_yd_morphism(alt, V)[0]:
            rows.append(form_as_row(alt))
    return rank(rows) if rows and V.n else 0


@pytest.mark.criterion(9, "H2_inv = (1, n(n-1)/2) on E(n); (2, alt_dim) on the (Z/2)^3 sample; alt_dim agrees with filter-and-rank")
def test_criterion_9_h2inv():
    for n in (1, 2, 3, 4):
        V = E(n)[0]
        assert h2_inv(V).as_tuple() == (1, n * (n - 1) // 2)
        assert h2_inv(V).alt_dim == _alt_dim_filter_and_rank(V)
    V = load_sample("z2cube_pair").datum
    inv = h2_inv(V)
    assert inv.multiplier_order == 2
    assert inv.alt_dim == _alt_dim_filter_and_rank(V)
    for name in BASE_SAMPLES:
        V = load_sample(name).datum
        assert h2_inv(V).alt_dim == _alt_dim_filter_and_rank(V)


@pytest.mark.criterion(10, "double of E(1), E(2): dim 8 and 32; r_dv alternating of rank 2n, congruent to the standard block; q = -1 on generators; |S||S-perp| = |G|^2")
def test_criterion_10_double():
    for n, dim in ((1, 8), (2, 32)):
        V = E(n)[0]
        res = drinfeld_double(V)
        ctx = V.ctx
        assert res.sigma_order * 2 ** (2 * n) == dim == res.dim_A == HopfAlgebra(res.dv_datum).dim
        assert res.r_dv.is_alternating()
        assert rank(res.r_dv.rows()) == 2 * n
        J = [[ctx.zero] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            J[i][n + i] = -ctx.one
            J[n + i][i] = ctx.one
        std = MetricQuadruple(res.dv_datum, res.q_sigma, BilinearFormV.from_rows(ctx, J))
        assert is_equivalent(res.quadruple(), std).status == "equivalent"
        for i in range(n):
            g = sigma_generators(V)[i]
            assert res.q_sigma.value(res.dv_datum.degrees[i], ctx) == -ctx.one
            assert res.sigma.embed(res.dv_datum.degrees[i]) == g
        amb = ambient_group(V.group)
        assert Subgroup.generated_by(amb, sigma_generators(V)).order * res.grading_group_order == V.group.order ** 2
        assert all(double_checks(res).values())
