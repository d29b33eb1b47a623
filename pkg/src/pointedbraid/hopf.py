"""The bosonization B(V)#k[Gamma] with basis {g x_P}.

Basis elements are pairs ``(g, P)`` with g an exponent tuple and P a bitmask
(bit i-1 set means x_i occurs).  All structure constants on basis elements
are roots of unity, so the monomial routines work with turns and only the
public element-level API materialises Scalars.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .abgroup import Elem
from .qls import QLSDatum
from .scalars import Scalar

HALF = Fraction(1, 2)
Basis = tuple  # (g, mask)


class BoundExceeded(ValueError):
    pass


def bits(mask: int) -> list:
    """Indices (0-based, increasing) of the set bits."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def submasks(mask: int) -> list:
    """All F subset of mask, in increasing numeric order."""
    out = []
    s = mask
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    return out[::-1]


class HopfAlgebra:
    def __init__(self, datum: QLSDatum):
        self.datum = datum
        self.ctx = datum.ctx
        self.group = datum.group
        self.n = datum.n
        self.full_mask = (1 << self.n) - 1
        self.basis = [(g, P) for g in self.group.elements() for P in range(1 << self.n)]
        self.index = {b: k for k, b in enumerate(self.basis)}
        self._mult = lru_cache(maxsize=None)(self._mono_mult)
        self._psi = lru_cache(maxsize=None)(self._psi_turn)
        self._gP = lru_cache(maxsize=None)(self._degree_of)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.group}, n={self.n}, dim={self.dim})"

    # -- monomial level ------------------------------------------------------
    def _degree_of(self, P: int) -> Elem:
        return self.group.sum(self.datum.degrees[i] for i in bits(P))

    def degree(self, P: int) -> Elem:
        """g_P = product of g_i over i in P."""
        return self._gP(P)

    def _psi_turn(self, P: int, F: int) -> Fraction:
        V = self.datum
        t = Fraction(0)
        for j in bits(F):
            for i in bits(P & ~F):
                if i < j:
                    t += V.chi_turn(j, V.degrees[i])
        return t

    def psi_turn(self, P: int, F: int) -> Fraction:
        if F & ~P:
            raise ValueError("psi(P, F) requires F ⊆ P")
        return self._psi(P, F)

    def psi(self, P: int, F: int) -> Scalar:
        """x_P = psi(P, F) x_F x_{P \\ F}."""
        return self.ctx.root(self.psi_turn(P, F))

    def _mono_mult(self, a: Basis, b: Basis) -> Optional[tuple]:
        (g, P), (h, Q) = a, b
        if P & Q:
            return None
        V = self.datum
        t = Fraction(0)
        # move h to the left through x_P:  x_i h = chi_i(h)^{-1} h x_i
        for i in bits(P):
            t -= V.chi_turn(i, h)
        # sort x_P x_Q:  x_i x_j = chi_j(g_i) x_j x_i
        if P and Q:
            qbits = bits(Q)
            for i in bits(P):
                for j in qbits:
                    if j < i:
                        t += V.chi_turn(j, V.degrees[i])
        return t, (self.group.add(g, h), P | Q)

    def mono_mult(self, a: Basis, b: Basis) -> Optional[tuple]:
        """(turn, basis) with a*b = exp(2 pi i turn) basis, or None if a*b = 0."""
        return self._mult(a, b)

    def mono_coproduct(self, b: Basis) -> list:
        """[(turn, left, right)] for Delta(g x_P) = sum_F psi(P,F) g g_F x_{P\\F} ⊗ g x_F."""
        g, P = b
        G = self.group
        out = []
        for F in submasks(P):
            out.append((self.psi_turn(P, F), (G.add(g, self.degree(F)), P & ~F), (g, F)))
        return out

    def mono_antipode(self, b: Basis) -> tuple:
        """(turn, basis) with S(g x_P) = exp(2 pi i turn) basis."""
        g, P = b
        G = self.group
        # S(g x_P) = S(x_ps) ... S(x_p1) S(g), S(x_i) = -g_i^{-1} x_i
        t = Fraction(0)
        cur = (G.identity, 0)
        for i in reversed(bits(P)):
            factor = (G.neg(self.datum.degrees[i]), 1 << i)
            tt, cur = self.mono_mult(cur, factor)
            t += tt + HALF
        tt, cur = self.mono_mult(cur, (G.neg(g), 0))
        return t + tt, cur

    @staticmethod
    def mono_counit(b: Basis) -> int:
        return 1 if b[1] == 0 else 0

    # -- element level ---------------------------------------------------------
    def element(self, terms=None) -> "HopfElement":
        return HopfElement(self, terms or {})

    def basis_element(self, g: Elem, P: int = 0) -> "HopfElement":
        return HopfElement(self, {(tuple(g), P): self.ctx.one})

    @property
    def one(self) -> "HopfElement":
        return self.basis_element(self.group.identity, 0)

    def group_element(self, g: Elem) -> "HopfElement":
        return self.basis_element(g, 0)

    def x(self, i: int) -> "HopfElement":
        """x_i with 0-based i."""
        return self.basis_element(self.group.identity, 1 << i)

    def generators(self) -> list:
        """Algebra generators as basis elements: e_k in Gamma, then x_i."""
        G = self.group
        return [(e, 0) for e in G.generators()] + [(G.identity, 1 << i) for i in range(self.n)]

    def multiply(self, a: "HopfElement", b: "HopfElement") -> "HopfElement":
        self._check(a)
        self._check(b)
        out: dict = {}
        root = self.ctx.root
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                m = self.mono_mult(ka, kb)
                if m is None:
                    continue
                t, k = m
                _acc(out, k, ca * cb * root(t))
        return HopfElement(self, out)

    def comultiply(self, a: "HopfElement") -> "TensorElement":
        self._check(a)
        out: dict = {}
        root = self.ctx.root
        for k, c in a.terms.items():
            for t, l, r in self.mono_coproduct(k):
                _acc(out, (l, r), c * root(t))
        return TensorElement(self, out)

    def counit(self, a: "HopfElement") -> Scalar:
        self._check(a)
        acc = self.ctx.zero
        for k, c in a.terms.items():
            if k[1] == 0:
                acc = acc + c
        return acc

    def antipode(self, a: "HopfElement") -> "HopfElement":
        self._check(a)
        out: dict = {}
        for k, c in a.terms.items():
            t, b = self.mono_antipode(k)
            _acc(out, b, c * self.ctx.root(t))
        return HopfElement(self, out)

    def _check(self, a) -> None:
        if not isinstance(a, HopfElement) or a.algebra is not self:
            raise ValueError("element belongs to a different Hopf algebra")

    def tensor_multiply(self, X: "TensorElement", Y: "TensorElement") -> "TensorElement":
        out: dict = {}
        root = self.ctx.root
        for (a1, a2), c in X.terms.items():
            for (b1, b2), d in Y.terms.items():
                m1 = self.mono_mult(a1, b1)
                if m1 is None:
                    continue
                m2 = self.mono_mult(a2, b2)
                if m2 is None:
                    continue
                _acc(out, (m1[1], m2[1]), c * d * root(m1[0] + m2[0]))
        return TensorElement(self, out)


def _acc(d: dict, k, v) -> None:
    nv = d[k] + v if k in d else v
    if nv:
        d[k] = nv
    else:
        d.pop(k, None)


class HopfElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: HopfAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {k: v for k, v in terms.items() if v}

    def __add__(self, other: "HopfElement") -> "HopfElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return HopfElement(self.algebra, out)

    def __neg__(self) -> "HopfElement":
        return HopfElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "HopfElement") -> "HopfElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HopfElement):
            return self.algebra.multiply(self, other)
        return HopfElement(self.algebra, {k: v * other for k, v in self.terms.items()})

    def __rmul__(self, other):
        return HopfElement(self.algebra, {k: other * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, HopfElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: self.algebra.index[kv[0]])

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{_basis_str(k)}" for k, c in self.sorted_terms())


class TensorElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: HopfAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {k: v for k, v in terms.items() if v}

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return TensorElement(self.algebra, out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, -v)
        return TensorElement(self.algebra, out)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return self.algebra.tensor_multiply(self, other)
        return TensorElement(self.algebra, {k: v * other for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, TensorElement):
            return self.algebra is other.algebra and self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{_basis_str(a)}⊗{_basis_str(b)}"
                          for (a, b), c in sorted(self.terms.items()))


def _basis_str(b: Basis) -> str:
    g, P = b
    xs = "".join(f"x{i + 1}" for i in bits(P))
    return f"g{list(g)}" + (f"·{xs}" if xs else "")


def basis_label(b: Basis) -> dict:
    return {"g": list(b[0]), "P": [i + 1 for i in bits(b[1])]}


# ---------------------------------------------------------------------------
# verification

def _mono_scalar(H: HopfAlgebra, m) -> str:
    if m is None:
        return "0"
    return f"{H.ctx.root(m[0]).to_expr()}*{_basis_str(m[1])}"


def _family(name: str) -> dict:
    return {"name": name, "status": "pass", "checked": 0, "counterexample": None}


def _fail(fam: dict, witness: dict) -> None:
    if fam["status"] == "pass":
        fam["status"] = "fail"
        fam["counterexample"] = witness


def _tensor_mono(H: HopfAlgebra, b: Basis) -> dict:
    """Delta(b) as {(l, r): turn}."""
    return {(l, r): t for t, l, r in H.mono_coproduct(b)}


def _tensor3(H: HopfAlgebra, b: Basis, left: bool) -> dict:
    """(Delta ⊗ id)Delta(b) if left else (id ⊗ Delta)Delta(b), as {(a,b,c): Scalar}."""
    out: dict = {}
    root = H.ctx.root
    for t, l, r in H.mono_coproduct(b):
        if left:
            for t2, ll, lr in H.mono_coproduct(l):
                _acc(out, (ll, lr, r), root(t + t2))
        else:
            for t2, rl, rr in H.mono_coproduct(r):
                _acc(out, (l, rl, rr), root(t + t2))
    return out


def verify_hopf_axioms(H: HopfAlgebra, bound: int = 1024, exhaustive_dim: int = 64) -> dict:
    """Check the Hopf algebra axioms on basis elements.

    Associativity and multiplicativity of Delta are checked on all basis
    triples/pairs when dim H <= exhaustive_dim, otherwise with the last
    factor running over algebra generators (which implies the full
    statement since every basis element is a product of generators).
    """
    if H.dim > bound:
        raise BoundExceeded(f"dim H = {H.dim} exceeds bound {bound}")
    exhaustive = H.dim <= exhaustive_dim
    ctx = H.ctx
    root = ctx.root
    basis = H.basis
    right_factors = basis if exhaustive else H.generators()
    unit = (H.group.identity, 0)

    assoc = _family("associativity_unit")
    for a in basis:
        for u in ((unit, a), (a, unit)):
            assoc["checked"] += 1
            m = H.mono_mult(*u)
            if m is None or m[1] != a or root(m[0]) != 1:
                _fail(assoc, {"kind": "unit", "a": basis_label(a)})
    for a in basis:
        for b in basis:
            ab = H.mono_mult(a, b)
            for c in right_factors:
                assoc["checked"] += 1
                bc = H.mono_mult(b, c)
                left = None if ab is None else H.mono_mult(ab[1], c)
                right = None if bc is None else H.mono_mult(a, bc[1])
                lv = None if left is None else (root(ab[0] + left[0]), left[1])
                rv = None if right is None else (root(bc[0] + right[0]), right[1])
                if lv != rv:
                    _fail(assoc, {"a": basis_label(a), "b": basis_label(b), "c": basis_label(c),
                                  "(ab)c": _mono_scalar(H, None if lv is None else (ab[0] + left[0], left[1])),
                                  "a(bc)": _mono_scalar(H, None if rv is None else (bc[0] + right[0], right[1]))})

    coassoc = _family("coassociativity")
    counit = _family("counit")
    antipode = _family("antipode")
    for a in basis:
        coassoc["checked"] += 1
        if _tensor3(H, a, True) != _tensor3(H, a, False):
            _fail(coassoc, {"a": basis_label(a)})
        counit["checked"] += 1
        lhs: dict = {}
        rhs: dict = {}
        for t, l, r in H.mono_coproduct(a):
            if l[1] == 0:
                _acc(lhs, r, root(t))
            if r[1] == 0:
                _acc(rhs, l, root(t))
        if lhs != {a: ctx.one} or rhs != {a: ctx.one}:
            _fail(counit, {"a": basis_label(a)})
        antipode["checked"] += 1
        expected = {unit: ctx.one} if a[1] == 0 else {}
        s_left: dict = {}
        s_right: dict = {}
        for t, l, r in H.mono_coproduct(a):
            ts, sl = H.mono_antipode(l)
            m = H.mono_mult(sl, r)
            if m is not None:
                _acc(s_left, m[1], root(t + ts + m[0]))
            ts, sr = H.mono_antipode(r)
            m = H.mono_mult(l, sr)
            if m is not None:
                _acc(s_right, m[1], root(t + ts + m[0]))
        if s_left != expected or s_right != expected:
            _fail(antipode, {"a": basis_label(a)})

    bialg = _family("bialgebra")
    copro = {a: _tensor_mono(H, a) for a in basis}
    for a in basis:
        for b in right_factors:
            bialg["checked"] += 1
            m = H.mono_mult(a, b)
            lhs = {}
            if m is not None:
                for (l, r), t in copro[m[1]].items():
                    _acc(lhs, (l, r), root(m[0] + t))
            rhs: dict = {}
            for (l1, r1), t1 in copro[a].items():
                for (l2, r2), t2 in copro[b].items():
                    ml = H.mono_mult(l1, l2)
                    if ml is None:
                        continue
                    mr = H.mono_mult(r1, r2)
                    if mr is None:
                        continue
                    _acc(rhs, (ml[1], mr[1]), root(t1 + t2 + ml[0] + mr[0]))
            eps_ok = (H.mono_counit(m[1]) * root(m[0]) if m is not None else 0) == \
                H.mono_counit(a) * H.mono_counit(b)
            if lhs != rhs or not eps_ok:
                _fail(bialg, {"a": basis_label(a), "b": basis_label(b)})

    families = [assoc, coassoc, counit, antipode, bialg]
    return {
        "dim": H.dim,
        "expected_dim": H.group.order * 2 ** H.n,
        "mode": "exhaustive" if exhaustive else "generator-reduced",
        "status": "pass" if all(f["status"] == "pass" for f in families) else "fail",
        "axioms": families,
    }
