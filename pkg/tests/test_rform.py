from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import BASE_SAMPLES, E, yd_forms
from oracles import ExpandedRForm
from pointedbraid.hopf import BoundExceeded, HopfAlgebra
from pointedbraid.linalg import identity, kron, matmul
from pointedbraid.presentation import load_sample
from pointedbraid.qls import BilinearFormV
from pointedbraid.rform import (InvalidForm, RForm, TableRForm, braid_comodules, extension_comodule,
                                hexagons_hold, is_comodule_map, one_dim_comodule, regular_comodule,
                                ribbon_element, ribbon_structures, ribbon_structures_bruteforce,
                                squared_braiding, standard_test_comodules, trivial_comodule, twist_compatible,
                                verify_cqt)


def _rform(name):
    p = load_sample(name)
    H = HopfAlgebra(p.datum)
    return p, H, RForm(p.datum, p.r1, algebra=H)


def test_generator_values():
    p, H, r = _rform("z4_pair")
    V = p.datum
    G = V.group
    for g in G.elements():
        for h in G.elements():
            assert r.value((g, 0), (h, 0)) == V.ctx.root(V.r0.turn(g, h))
        for i in range(V.n):
            assert not r.value((g, 0), (G.identity, 1 << i))
            assert not r.value((G.identity, 1 << i), (g, 0))
    for i in range(V.n):
        for j in range(V.n):
            assert r.value((G.identity, 1 << i), (G.identity, 1 << j)) == p.r1[i, j]


@pytest.mark.parametrize("name", BASE_SAMPLES)
def test_unit_and_degree(name):
    p, H, r = _rform(name)
    unit = (p.group.identity, 0)
    for b in H.basis:
        assert r.value(unit, b) == H.counit(H.basis_element(*b))
        assert r.value(b, unit) == H.counit(H.basis_element(*b))
    for a in H.basis:
        for b in H.basis:
            if bin(a[1]).count("1") != bin(b[1]).count("1"):
                assert not r.value(a, b)


@pytest.mark.parametrize("name", ["e1", "e2_mixed", "e3_mixed", "z4_pair", "z2z2_pair", "z2z2_single", "z6_split"])
def test_values_match_expansion_oracle(name):
    p, H, r = _rform(name)
    oracle = ExpandedRForm(p.datum, p.r1)
    for a in H.basis:
        for b in H.basis:
            assert r.value(a, b) == oracle.value(a, b), (a, b)


@pytest.mark.parametrize("name", ["e2_mixed", "z4_pair", "z2z2_pair"])
def test_convolution_matches_closed_form(name):
    p, H, r = _rform(name)
    for a in H.basis:
        for b in H.basis:
            assert r.value_by_convolution(a, b) == r.value(a, b)


def test_e1_value_two_ways():
    V, r1 = E(1, [[Fraction(7, 3)]])
    H = HopfAlgebra(V)
    r = RForm(V, r1, algebra=H)
    oracle = ExpandedRForm(V, r1)
    g = (1,)
    assert r.value((g, 1), (g, 1)) == r.value_by_convolution((g, 1), (g, 1)) == oracle.value((g, 1), (g, 1))


@pytest.mark.parametrize("name", BASE_SAMPLES)
def test_cqt_full_and_h1_on_samples(name):
    p, H, r = _rform(name)
    full = verify_cqt(r, mode="full")
    h1 = verify_cqt(r, mode="h1")
    assert full["status"] == h1["status"] == "pass"


@settings(max_examples=8)
@given(data=st.data())
def test_cqt_random_forms_z4(data):
    V = load_sample("z4_pair").datum
    r1 = data.draw(yd_forms(V))
    r = RForm(V, r1)
    assert verify_cqt(r)["status"] == "pass"


def test_inverse_table():
    p, H, r = _rform("z4_pair")
    ctx = p.ctx
    for a in H.basis:
        for b in H.basis:
            # (r * r^{-1})(a, b) = sum r(a1, b1) r^{-1}(a2, b2)
            acc = ctx.zero
            for t, a1, a2 in H.mono_coproduct(a):
                for s, b1, b2 in H.mono_coproduct(b):
                    v = r.value(a1, b1)
                    if v:
                        acc = acc + ctx.root(t + s) * v * r.inverse_value(a2, b2)
            expected = ctx.one if a[1] == 0 and b[1] == 0 else ctx.zero
            assert acc == expected


def test_corrupted_form_fails_with_witness():
    p, H, r = _rform("e1")
    G = p.group
    bad = TableRForm(r, {((G.identity, 0), (G.identity, 1)): p.ctx.one})
    rep = verify_cqt(bad)
    assert rep["status"] == "fail"
    failing = {a["name"]: a for a in rep["axioms"] if a["status"] == "fail"}
    assert {"cqt2", "cqt3"} & set(failing)
    assert all(a["counterexample"] is not None for a in failing.values())


def test_group_algebra_case():
    p, H, r = _rform("z3_pointed")
    assert verify_cqt(r)["status"] == "pass"


def test_non_yd_form_rejected():
    V = load_sample("z2z2_pair").datum
    with pytest.raises(InvalidForm) as exc:
        RForm(V, BilinearFormV.from_rows(V.ctx, [[0, 1], [0, 0]]))
    assert exc.value.violations


def test_cqt_bound():
    V, r1 = E(8)
    with pytest.raises(BoundExceeded):
        verify_cqt(RForm(V, r1), bound=256)


# ---------------------------------------------------------------------------
# braiding on comodules

def test_braiding_on_one_dimensional_comodules():
    p, H, r = _rform("z4_pair")
    ctx = p.ctx
    T = trivial_comodule(H)
    assert braid_comodules(r, T, T) == identity(ctx, 1)
    for g in p.group.elements():
        for h in p.group.elements():
            c = braid_comodules(r, one_dim_comodule(H, g), one_dim_comodule(H, h))
            assert c == [[ctx.root(p.datum.r0.turn(g, h))]]


@pytest.mark.parametrize("name", ["e2_mixed", "e3_mixed", "z4_pair", "z2z2_pair", "z2cube_pair"])
def test_squared_braiding_on_extensions(name):
    p, H, r = _rform(name)
    ctx = p.ctx
    for i in range(p.n):
        for j in range(p.n):
            X, Y = extension_comodule(H, i), extension_comodule(H, j)
            S = squared_braiding(r, X, Y)
            expected = identity(ctx, 4)
            expected[0][3] = p.r1[i, j] - p.r1[j, i]
            assert S == expected


@pytest.mark.parametrize("name", ["e2_mixed", "z4_pair", "z2z2_pair"])
def test_hexagons(name):
    p, H, r = _rform(name)
    comods = standard_test_comodules(H)
    small = [C for C in comods if C.dim <= 2]
    for U in small:
        for V in small:
            for W in small:
                if U.dim * V.dim * W.dim <= 8:
                    assert hexagons_hold(r, U, V, W)


def test_braiding_is_natural():
    p, H, r = _rform("e2_mixed")
    ctx = p.ctx
    X = extension_comodule(H, 0)
    g = X.coaction[1][1][1][0]
    K = one_dim_comodule(H, g)
    proj = [[ctx.zero, ctx.one]]          # V_x -> k_g, v1 -> 1
    assert is_comodule_map(X, K, proj)
    for W in standard_test_comodules(H):
        lhs = matmul(braid_comodules(r, K, W), kron(proj, identity(ctx, W.dim)), ctx)
        rhs = matmul(kron(identity(ctx, W.dim), proj), braid_comodules(r, X, W), ctx)
        assert lhs == rhs


# ---------------------------------------------------------------------------
# ribbon structures

def _alpha_is_central(H, alpha):
    ctx = H.ctx
    for y in H.basis:
        L, R = {}, {}
        for t, l, rr in H.mono_coproduct(y):
            if alpha[l]:
                L[rr] = L.get(rr, ctx.zero) + ctx.root(t) * alpha[l]
            if alpha[rr]:
                R[l] = R.get(l, ctx.zero) + ctx.root(t) * alpha[rr]
        if {k: v for k, v in L.items() if v} != {k: v for k, v in R.items() if v}:
            return False
    return True


@pytest.mark.parametrize("name,count", [("e1", 1), ("e2_mixed", 1), ("e3_mixed", 1), ("z2z2_single", 2),
                                        ("z2z2_pair", 1), ("z4_pair", 1), ("z2cube_pair", 4), ("z3_pointed", 1),
                                        ("z6_split", 1)])
def test_ribbon_counts(name, count):
    V = load_sample(name).datum
    got = ribbon_structures(V)
    assert len(got) == count
    assert [g.exponents for g in got] == [g.exponents for g in ribbon_structures_bruteforce(V)]
    assert [g.exponents for g in got] == sorted(g.exponents for g in got)


@pytest.mark.parametrize("name", ["e1", "e2_mixed", "z2z2_single", "z2z2_pair", "z4_pair", "e3_mixed"])
def test_ribbon_characters_match_drinfeld_element_oracle(name):
    """gamma * eta^{-1} is central and S-invariant exactly for the enumerated gamma."""
    p, H, r = _rform(name)
    ctx = p.ctx
    ribbon = {g.exponents for g in ribbon_structures(p.datum)}
    for c in p.group.characters():
        if not c.is_pm1():
            continue
        alpha = ribbon_element(r, c)
        s_inv = all(ctx.root(H.mono_antipode(y)[0]) * alpha[H.mono_antipode(y)[1]] == alpha[y] for y in H.basis)
        assert s_inv
        assert _alpha_is_central(H, alpha) == (c.exponents in ribbon)


@pytest.mark.parametrize("name", ["e1", "e2_mixed", "z2z2_single", "z4_pair", "z2cube_pair"])
def test_twist_compatibility(name):
    p, H, r = _rform(name)
    tests = standard_test_comodules(H)
    if H.dim <= 8:
        tests = tests + [regular_comodule(H)]
    for rc in ribbon_structures(p.datum):
        alpha = ribbon_element(r, rc.character)
        for X in tests:
            for Y in tests:
                assert twist_compatible(r, alpha, X, Y)


def test_ribbon_exists_on_all_small_data():
    """Every symmetric-type datum with <= 2 generators over a group of order <= 4 has a ribbon structure."""
    import sys
    from pathlib import Path
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "scripts"))
    from survey_small_groups import bicharacters, data_for
    from pointedbraid.abgroup import FinAbGroup
    from pointedbraid.qls import validate_datum
    from pointedbraid.scalars import CyclotomicContext
    seen = 0
    for inv in [(2,), (4,), (2, 2)]:
        G = FinAbGroup(inv)
        ctx = CyclotomicContext(max(G.exponent, 2))
        for r0 in bicharacters(G):
            for n in (1, 2):
                for degrees, chars in data_for(G, r0, n):
                    V = validate_datum(ctx, G, r0, degrees, chars)
                    got = ribbon_structures(V)
                    assert len(got) >= 1
                    assert [g.exponents for g in got] == [g.exponents for g in ribbon_structures_bruteforce(V)]
                    seen += 1
    assert seen == 37
