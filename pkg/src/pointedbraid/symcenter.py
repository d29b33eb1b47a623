"""Symmetric center: Gamma-perp, V-perp and the predicates built from them."""
from __future__ import annotations

from dataclasses import dataclass

from .abgroup import AbstractSubgroup, Bicharacter, Subgroup, radical
from .hopf import BoundExceeded, HopfAlgebra, _acc, bits
from .linalg import Matrix, SparseEliminator, nullspace, rank, row_basis
from .qls import BilinearFormV, QLSDatum, decompose_form, is_yd_morphism, validate_datum
from .rform import InvalidForm, RForm


@dataclass(frozen=True)
class SymCenterResult:
    datum: QLSDatum
    r1: BilinearFormV
    gamma_perp: Subgroup
    v_perp: tuple            # canonical (RREF) basis vectors in x-coordinates
    v_perp_labels: tuple     # index of the x_j whose (g, chi) label each basis vector carries
    sub_group: AbstractSubgroup
    restricted_datum: QLSDatum
    restricted_r1: BilinearFormV

    @property
    def is_symmetric(self) -> bool:
        return self.gamma_perp.is_whole() and len(self.v_perp) == self.datum.n

    @property
    def is_factorizable(self) -> bool:
        return self.gamma_perp.is_trivial() and self.datum.n == 0

    @property
    def zsym_semisimple(self) -> bool:
        return len(self.v_perp) == 0

    def predicates(self) -> dict:
        return {"is_symmetric": self.is_symmetric,
                "is_factorizable": self.is_factorizable,
                "zsym_semisimple": self.zsym_semisimple}

    def to_dict(self) -> dict:
        return {
            "gamma_perp": {"order": self.gamma_perp.order,
                           "elements": [list(g) for g in self.gamma_perp.sorted_elements()],
                           "invariants": list(self.sub_group.group.invariants)},
            "v_perp": [[x.to_expr() for x in v] for v in self.v_perp],
            "predicates": self.predicates(),
        }


def gamma_perp(datum: QLSDatum) -> Subgroup:
    """Radical of b(g, h) = r0(g, h) r0(h, g)."""
    return radical(datum.r0.symmetrized())


def v_perp(datum: QLSDatum, r1: BilinearFormV) -> list:
    """Canonical basis of the radical of (r1)_alt."""
    _, alt = decompose_form(r1)
    if r1.n == 0:
        return []
    ker = nullspace([list(col) for col in zip(*alt.matrix)], datum.ctx)  # left kernel
    return row_basis(ker) if ker else []


def _require(datum: QLSDatum, r1: BilinearFormV) -> None:
    ok, violations = is_yd_morphism(r1, datum)
    if not ok:
        raise InvalidForm(violations)


def symmetric_center(datum: QLSDatum, r1: BilinearFormV, check: bool = True) -> SymCenterResult:
    _require(datum, r1)
    ctx = datum.ctx
    gp = gamma_perp(datum)
    vp = v_perp(datum, r1)
    labels = []
    for v in vp:
        support = [j for j, c in enumerate(v) if c]
        lab = {(datum.degrees[j], datum.characters[j]) for j in support}
        if len(lab) != 1:
            raise AssertionError("radical basis vector is not homogeneous")
        labels.append(support[0])
    # restriction to Gamma-perp
    sub = gp.abstract()
    A = sub.group
    emb = sub.embedding
    r0 = Bicharacter(A, tuple(tuple(datum.r0.turn(emb[i], emb[j]) for j in range(A.rank))
                              for i in range(A.rank)))
    degrees = [sub.coordinates(datum.degrees[j]) for j in labels]
    chars = [A.character_from_function(lambda h, j=j: datum.characters[j].turn(sub.embed(h)))
             for j in labels]
    rdatum = validate_datum(ctx, A, r0, degrees, chars)
    m = len(vp)
    R = [[sum((vp[a][i] * r1[i, j] * vp[b][j] for i in range(r1.n) for j in range(r1.n)
               if vp[a][i] and vp[b][j]), ctx.zero) for b in range(m)] for a in range(m)]
    rr1 = BilinearFormV(ctx, tuple(map(tuple, R)))
    result = SymCenterResult(datum, r1, gp, tuple(tuple(v) for v in vp), tuple(labels), sub, rdatum, rr1)
    if check:
        report = centralizer_spot_check(result)
        if not report["ok"]:
            raise AssertionError(f"centralizer spot check failed: {report}")
    return result


def predicates(datum: QLSDatum, r1: BilinearFormV) -> dict:
    return symmetric_center(datum, r1, check=False).predicates()


# ---------------------------------------------------------------------------
# the defining condition x_(1) r(x_(2), y_(1)) r(y_(2), x_(3)) = eps(y) x

def _hsym_image(r: RForm, x: tuple, y: tuple) -> dict:
    """x_(1) r(x_(2), y_(1)) r(y_(2), x_(3)) - eps(y) x, as {basis: Scalar}."""
    H = r.algebra
    root = H.ctx.root
    out: dict = {}
    ycop = H.mono_coproduct(y)
    for t, x1, rest in H.mono_coproduct(x):
        for t2, x2, x3 in H.mono_coproduct(rest):
            acc = H.ctx.zero
            for ty, y1, y2 in ycop:
                a = r.value(x2, y1)
                if a:
                    b = r.value(y2, x3)
                    if b:
                        acc = acc + root(ty) * a * b
            if acc:
                _acc(out, x1, root(t + t2) * acc)
    if y[1] == 0:
        _acc(out, x, -H.ctx.one)
    return out


def satisfies_hsym(r: RForm, vec: dict) -> bool:
    """Whether the element sum vec[b] b satisfies the condition for every basis y."""
    H = r.algebra
    for y in H.basis:
        total: dict = {}
        for b, c in vec.items():
            for k, v in _hsym_image(r, b, y).items():
                _acc(total, k, c * v)
        if total:
            return False
    return True


def centralizer_spot_check(res: SymCenterResult, bound: int = 256) -> dict:
    """Generators of the result satisfy the condition; outside generators fail it."""
    datum = res.datum
    H = HopfAlgebra(datum)
    if H.dim > bound:
        return {"ok": True, "skipped": True}
    r = RForm(datum, res.r1, algebra=H)
    G = datum.group
    ident = G.identity
    ok = True
    for g in res.gamma_perp.generators:
        ok &= satisfies_hsym(r, {(g, 0): datum.ctx.one})
    for v in res.v_perp:
        ok &= satisfies_hsym(r, {(ident, 1 << j): c for j, c in enumerate(v) if c})
    for e in G.generators():
        if e not in res.gamma_perp:
            ok &= not satisfies_hsym(r, {(e, 0): datum.ctx.one})
    span = res.v_perp
    for j in range(datum.n):
        unit = [datum.ctx.one if k == j else datum.ctx.zero for k in range(datum.n)]
        if rank([list(v) for v in span] + [unit]) > len(span):
            ok &= not satisfies_hsym(r, {(ident, 1 << j): datum.ctx.one})
    return {"ok": bool(ok), "skipped": False}


def hsym_bruteforce(r: RForm, bound: int = 128) -> Matrix:
    """Canonical basis (RREF, H-basis coordinates) of the solution space."""
    H = r.algebra
    if H.dim > bound:
        raise BoundExceeded(f"dim H = {H.dim} exceeds oracle bound {bound}")
    idx = H.index
    elim = SparseEliminator(H.ctx)
    for y in H.basis:
        rows: dict = {}
        for a in H.basis:
            for b, v in _hsym_image(r, a, y).items():
                rows.setdefault(idx[b], {})[idx[a]] = v
        for key in sorted(rows):
            elim.add(rows[key])
    ker = elim.kernel(H.dim)
    return row_basis(ker) if ker else []


def hsym_predicted(res: SymCenterResult, H: HopfAlgebra) -> Matrix:
    """Canonical basis of span{g y_P : g in Gamma-perp, P subset of V-perp basis}."""
    ctx = H.ctx
    ys = [H.element({(H.group.identity, 1 << j): c for j, c in enumerate(v) if c}) for v in res.v_perp]
    m = len(ys)
    rows = []
    for g in res.gamma_perp.sorted_elements():
        for mask in range(1 << m):
            el = H.group_element(g)
            for k in bits(mask):
                el = el * ys[k]
            vec = [ctx.zero] * H.dim
            for b, c in el.terms.items():
                vec[H.index[b]] = c
            rows.append(vec)
    return row_basis(rows) if rows else []
