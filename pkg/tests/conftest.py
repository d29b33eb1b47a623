import os
import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from pointedbraid.abgroup import Bicharacter, FinAbGroup
from pointedbraid.presentation import load_sample
from pointedbraid.qls import BilinearFormV, validate_datum, yd_form_basis
from pointedbraid.scalars import CyclotomicContext

settings.register_profile("ci", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=10, deadline=None)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

BASE_SAMPLES = ["e1", "e2_zero", "e2_symmetric", "e2_symplectic", "e2_mixed", "e3_symmetric",
                "e3_alternating", "e3_mixed", "z4_pair", "z4_single", "z2z2_pair", "z2z2_single",
                "z2cube_pair", "z3_pointed", "z6_split"]


def E(n, r1=None):
    """E(n) datum over Z/2, plus a form (zero by default)."""
    ctx = CyclotomicContext(2)
    G = FinAbGroup((2,))
    V = validate_datum(ctx, G, Bicharacter(G, ((Fraction(1, 2),),)), [(1,)] * n, [G.character([1])] * n)
    M = r1 if r1 is not None else [[0] * n for _ in range(n)]
    return V, BilinearFormV.from_rows(ctx, M)


def random_yd_form(V, rng: random.Random, span: int = 3) -> BilinearFormV:
    """Random combination of the elementary YD-morphism forms.

    Coefficients are a + b z with z = zeta_N, so non-rational entries occur when N > 2.
    """
    ctx = V.ctx
    out = BilinearFormV.zero(ctx, V.n)
    z = ctx.root(Fraction(1, ctx.N))
    for b in yd_form_basis(V):
        c = ctx.scalar(Fraction(rng.randint(-span, span), rng.randint(1, 3)))
        if ctx.N > 2:
            c = c + z * Fraction(rng.randint(-span, span), rng.randint(1, 3))
        out = out + b.scale(c)
    return out


CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, text): acceptance criterion number k")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when not in ("setup", "call"):
        return
    k, text = mark.args
    failed = call.excinfo is not None
    entry = CRITERIA.setdefault(k, {"text": text, "ok": True, "ran": False})
    entry["ran"] = entry["ran"] or call.when == "call"
    if failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        e = CRITERIA[k]
        verdict = "PASS" if e["ok"] and e["ran"] else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {k}: {e['text']}")


@st.composite
def yd_forms(draw, V, span=3):
    ctx = V.ctx
    out = BilinearFormV.zero(ctx, V.n)
    z = ctx.root(Fraction(1, ctx.N))
    for b in yd_form_basis(V):
        c = ctx.scalar(Fraction(draw(st.integers(-span, span)), draw(st.integers(1, 3))))
        if ctx.N > 2:
            c = c + z * Fraction(draw(st.integers(-span, span)), draw(st.integers(1, 3)))
        out = out + b.scale(c)
    return out


@pytest.fixture(scope="session")
def samples():
    return {name: load_sample(name) for name in BASE_SAMPLES}
