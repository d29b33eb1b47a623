"""Finite abelian groups in invariant-factor form and their pairings.

Group elements are plain tuples of exponents.  Characters, bicharacters and
quadratic forms take root-of-unity values, which are kept as *turns*
(Fractions mod 1) so that no cyclotomic context is needed until a value has
to be materialised as a :class:`~pointedbraid.scalars.Scalar`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .scalars import CyclotomicContext, Scalar, lcm

Elem = tuple


class GroupError(ValueError):
    pass


class GroupTooLarge(GroupError):
    """A search bound was exceeded."""


def _frac_mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


# ---------------------------------------------------------------------------
# integer matrices

def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return (U, D, V) with U*A*V = D diagonal, U, V unimodular.

    Diagonal entries are non-negative and each divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        changed = True
            if changed:
                cands = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cands += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, pi, pj = min(cands)
                if abs(D[pi][pj]) < abs(D[t][t]):
                    swap_rows(t, pi)
                    swap_cols(t, pj)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, D, V


def left_integer_kernel(S: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the lattice {w in Z^r : w S = 0}."""
    r = len(S)
    c = len(S[0]) if r else 0
    rows = [list(map(int, S[i])) + [int(i == j) for j in range(r)] for i in range(r)]
    top = 0
    for col in range(c):
        while True:
            nz = [i for i in range(top, r) if rows[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][col]))
            rows[top], rows[piv] = rows[piv], rows[top]
            done = True
            for i in range(top + 1, r):
                if rows[i][col]:
                    q = rows[i][col] // rows[top][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[top])]
                    if rows[i][col]:
                        done = False
            if done:
                top += 1
                break
    return [row[c:] for row in rows if not any(row[:c])]


def _int_inverse(V: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(V)
    aug = [[Fraction(x) for x in V[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


# ---------------------------------------------------------------------------
# groups

@dataclass(frozen=True)
class FinAbGroup:
    """Z/m_1 x ... x Z/m_k with every m_i >= 2."""

    invariants: tuple

    def __post_init__(self):
        inv = tuple(int(m) for m in self.invariants)
        if any(m < 2 for m in inv):
            raise GroupError(f"cyclic factors must have order >= 2, got {inv}")
        object.__setattr__(self, "invariants", inv)

    def __repr__(self) -> str:
        if not self.invariants:
            return "FinAbGroup(trivial)"
        return "FinAbGroup(" + " x ".join(f"Z/{m}" for m in self.invariants) + ")"

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @cached_property
    def order(self) -> int:
        return math.prod(self.invariants)

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.invariants) if self.invariants else 1

    def is_invariant_factor_form(self) -> bool:
        inv = self.invariants
        return all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))

    def elementary_divisors(self) -> tuple:
        out = []
        for m in self.invariants:
            p = 2
            while m > 1:
                if m % p == 0:
                    q = 1
                    while m % p == 0:
                        m //= p
                        q *= p
                    out.append(q)
                p += 1
        return tuple(sorted(out))

    @property
    def identity(self) -> Elem:
        return (0,) * self.rank

    def generator(self, i: int) -> Elem:
        return tuple(int(j == i) for j in range(self.rank))

    def generators(self) -> list:
        return [self.generator(i) for i in range(self.rank)]

    def element(self, exps: Iterable[int]) -> Elem:
        exps = tuple(int(a) for a in exps)
        if len(exps) != self.rank:
            raise GroupError(f"element {exps} has wrong length for {self}")
        return tuple(a % m for a, m in zip(exps, self.invariants))

    def contains(self, g) -> bool:
        return (isinstance(g, tuple) and len(g) == self.rank
                and all(isinstance(a, int) and 0 <= a < m for a, m in zip(g, self.invariants)))

    def add(self, g: Elem, h: Elem) -> Elem:
        return tuple((a + b) % m for a, b, m in zip(g, h, self.invariants))

    def neg(self, g: Elem) -> Elem:
        return tuple((-a) % m for a, m in zip(g, self.invariants))

    def scale(self, g: Elem, k: int) -> Elem:
        return tuple((a * k) % m for a, m in zip(g, self.invariants))

    def sum(self, elems: Iterable[Elem]) -> Elem:
        out = self.identity
        for g in elems:
            out = self.add(out, g)
        return out

    def combine(self, coeffs: Sequence[int], elems: Sequence[Elem]) -> Elem:
        out = [0] * self.rank
        for c, g in zip(coeffs, elems):
            for i, a in enumerate(g):
                out[i] += c * a
        return self.element(out)

    def elements(self) -> Iterator[Elem]:
        """All elements in lexicographic order of exponent vectors."""
        return itertools.product(*(range(m) for m in self.invariants))

    def element_order(self, g: Elem) -> int:
        return lcm(*(m // math.gcd(a, m) for a, m in zip(g, self.invariants))) if g else 1

    def product(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup(self.invariants + other.invariants)

    # characters -----------------------------------------------------------
    def character(self, exps: Iterable[int]) -> "Character":
        return Character(self, self.element(exps))

    def trivial_character(self) -> "Character":
        return Character(self, self.identity)

    def characters(self) -> Iterator["Character"]:
        for c in self.elements():
            yield Character(self, c)

    def character_from_turns(self, turns: Sequence[Fraction]) -> "Character":
        """Character with chi(e_i) = exp(2 pi i turns[i])."""
        exps = []
        for t, m in zip(turns, self.invariants):
            c = _frac_mod1(Fraction(t)) * m
            if c.denominator != 1:
                raise GroupError(f"value with turn {t} is not an {m}-th root of unity")
            exps.append(int(c))
        return Character(self, tuple(exps))

    def character_from_function(self, turn_of: Callable[[Elem], Fraction]) -> "Character":
        return self.character_from_turns([turn_of(e) for e in self.generators()])

    # presentations --------------------------------------------------------
    @staticmethod
    def from_relations(ngens: int, relations: Sequence[Sequence[int]]):
        """Z^ngens / <relations> in invariant-factor form.

        Returns ``(G, images, sections)``: images[i] is the class of the i-th
        standard generator in G, sections[j] is an integer vector in Z^ngens
        representing the j-th generator of G.
        """
        rows = [list(map(int, r)) for r in relations]
        if not rows:
            raise GroupError("infinite group: no relations")
        U, D, V = smith_normal_form(rows)
        diag = [D[j][j] if j < len(D) else 0 for j in range(ngens)]
        if any(d == 0 for d in diag):
            raise GroupError("relations do not define a finite group")
        keep = [j for j, d in enumerate(diag) if d != 1]
        G = FinAbGroup(tuple(diag[j] for j in keep))
        images = [G.element([V[i][j] for j in keep]) for i in range(ngens)]
        Vinv = _int_inverse(V)
        sections = [Vinv[j] for j in keep]
        return G, images, sections

    def normalized(self):
        """Invariant-factor form; returns (G', iso images, inverse images)."""
        k = self.rank
        rel = [[self.invariants[i] * int(i == j) for j in range(k)] for i in range(k)]
        G, images, sections = FinAbGroup.from_relations(k, rel)
        back = [self.element(s) for s in sections]
        return G, images, back


def group_from_invariants(invariants: Sequence[int]) -> FinAbGroup:
    inv = [int(m) for m in invariants if int(m) != 1]
    return FinAbGroup(tuple(inv))


# ---------------------------------------------------------------------------
# characters and bicharacters

@dataclass(frozen=True)
class Character:
    """chi(e_i) = zeta_{m_i}^{c_i}."""

    group: FinAbGroup
    exponents: tuple

    def turn(self, g: Elem) -> Fraction:
        return _frac_mod1(sum(Fraction(c * a, m) for c, a, m in
                              zip(self.exponents, g, self.group.invariants)))

    def value(self, g: Elem, ctx: CyclotomicContext) -> Scalar:
        return ctx.root(self.turn(g))

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.group, self.group.add(self.exponents, other.exponents))

    def inverse(self) -> "Character":
        return Character(self.group, self.group.neg(self.exponents))

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def is_pm1(self) -> bool:
        return all(2 * c % m == 0 for c, m in zip(self.exponents, self.group.invariants))

    def order(self) -> int:
        return self.group.element_order(self.exponents)


@dataclass(frozen=True)
class Bicharacter:
    """Bimultiplicative map Gamma x Gamma -> k^x, stored by generator-pair turns."""

    group: FinAbGroup
    turns: tuple  # tuple of tuples of Fraction

    def __post_init__(self):
        k = self.group.rank
        T = tuple(tuple(_frac_mod1(Fraction(x)) for x in row) for row in self.turns)
        if len(T) != k or any(len(row) != k for row in T):
            raise GroupError(f"bicharacter table must be {k}x{k}")
        inv = self.group.invariants
        for i in range(k):
            for j in range(k):
                if (T[i][j] * inv[i]).denominator != 1 or (T[i][j] * inv[j]).denominator != 1:
                    raise GroupError(
                        f"r0(e{i + 1}, e{j + 1}) must be a root of unity of order dividing "
                        f"gcd({inv[i]}, {inv[j]})")
        object.__setattr__(self, "turns", T)

    @classmethod
    def trivial(cls, group: FinAbGroup) -> "Bicharacter":
        return cls(group, tuple((Fraction(0),) * group.rank for _ in range(group.rank)))

    @classmethod
    def from_scalars(cls, group: FinAbGroup, table, ctx: CyclotomicContext) -> "Bicharacter":
        T = []
        for i, row in enumerate(table):
            out = []
            for j, s in enumerate(row):
                t = ctx.log_root(ctx.scalar(s) if not isinstance(s, Scalar) else s)
                if t is None:
                    raise GroupError(f"r0 entry ({i + 1},{j + 1}) = {s} is not a root of unity")
                out.append(t)
            T.append(tuple(out))
        return cls(group, tuple(T))

    def turn(self, g: Elem, h: Elem) -> Fraction:
        T = self.turns
        acc = Fraction(0)
        for i, a in enumerate(g):
            if a:
                row = T[i]
                for j, b in enumerate(h):
                    if b:
                        acc += a * b * row[j]
        return _frac_mod1(acc)

    def value(self, g: Elem, h: Elem, ctx: CyclotomicContext) -> Scalar:
        return ctx.root(self.turn(g, h))

    def scalar_table(self, ctx: CyclotomicContext) -> list:
        return [[ctx.root(t) for t in row] for row in self.turns]

    def transpose(self) -> "Bicharacter":
        k = self.group.rank
        return Bicharacter(self.group, tuple(tuple(self.turns[j][i] for j in range(k)) for i in range(k)))

    def is_symmetric(self) -> bool:
        return self.turns == self.transpose().turns

    def symmetrized(self) -> "Bicharacter":
        """b(g, h) = r(g, h) r(h, g)."""
        k = self.group.rank
        return Bicharacter(self.group, tuple(tuple(self.turns[i][j] + self.turns[j][i]
                                                   for j in range(k)) for i in range(k)))

    def ratio(self, other: "Bicharacter") -> "Bicharacter":
        k = self.group.rank
        return Bicharacter(self.group, tuple(tuple(self.turns[i][j] - other.turns[i][j]
                                                   for j in range(k)) for i in range(k)))

    def left_character(self, g: Elem) -> Character:
        """r(g, -)."""
        return self.group.character_from_function(lambda e: self.turn(g, e))

    def right_character(self, g: Elem) -> Character:
        """r(-, g)."""
        return self.group.character_from_function(lambda e: self.turn(e, g))

    def quadratic_form(self) -> "QuadraticForm":
        k = self.group.rank
        q = tuple(self.turns[i][i] for i in range(k))
        b = tuple(tuple(self.turns[i][j] + self.turns[j][i] for j in range(k)) for i in range(k))
        return QuadraticForm(self.group, q, b)

    def pullback(self, images: Sequence[Elem], source: FinAbGroup) -> "Bicharacter":
        """r o (alpha x alpha) for alpha given by generator images in self.group."""
        k = source.rank
        return Bicharacter(source, tuple(tuple(self.turn(images[i], images[j]) for j in range(k))
                                         for i in range(k)))


@dataclass(frozen=True)
class QuadraticForm:
    """q(sum a_i e_i) = prod q_i^(a_i^2) prod_{i<j} b_ij^(a_i a_j), in turns."""

    group: FinAbGroup
    gen_turns: tuple
    pair_turns: tuple  # full symmetric matrix of b(e_i, e_j); diagonal is 2 q_i

    def __post_init__(self):
        k = self.group.rank
        q = tuple(_frac_mod1(Fraction(x)) for x in self.gen_turns)
        b = [[_frac_mod1(Fraction(x)) for x in row] for row in self.pair_turns]
        if len(q) != k or len(b) != k:
            raise GroupError("quadratic form data has wrong size")
        inv = self.group.invariants
        for i in range(k):
            b[i][i] = _frac_mod1(2 * q[i])
            if (q[i] * inv[i] * inv[i]).denominator != 1 or (2 * q[i] * inv[i]).denominator != 1:
                raise GroupError(f"q(e{i + 1}) is not compatible with the order {inv[i]}")
            for j in range(i + 1, k):
                if b[i][j] != b[j][i]:
                    raise GroupError("associated bicharacter must be symmetric")
                if (b[i][j] * math.gcd(inv[i], inv[j])).denominator != 1:
                    raise GroupError(f"b(e{i + 1}, e{j + 1}) has incompatible order")
        object.__setattr__(self, "gen_turns", q)
        object.__setattr__(self, "pair_turns", tuple(tuple(r) for r in b))

    @classmethod
    def from_function(cls, group: FinAbGroup, turn_of: Callable[[Elem], Fraction],
                      check: bool = True) -> "QuadraticForm":
        gens = group.generators()
        q = [Fraction(turn_of(e)) for e in gens]
        k = group.rank
        b = [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                if i != j:
                    b[i][j] = turn_of(group.add(gens[i], gens[j])) - q[i] - q[j]
        form = cls(group, tuple(q), tuple(tuple(r) for r in b))
        if check:
            for g in group.elements():
                if _frac_mod1(Fraction(turn_of(g))) != form.turn(g):
                    raise GroupError(f"values are not a quadratic form (fails at {g})")
        return form

    def turn(self, g: Elem) -> Fraction:
        acc = Fraction(0)
        k = len(g)
        for i in range(k):
            a = g[i]
            if a:
                acc += a * a * self.gen_turns[i]
                for j in range(i + 1, k):
                    if g[j]:
                        acc += a * g[j] * self.pair_turns[i][j]
        return _frac_mod1(acc)

    def value(self, g: Elem, ctx: CyclotomicContext) -> Scalar:
        return ctx.root(self.turn(g))

    def bicharacter(self) -> Bicharacter:
        return Bicharacter(self.group, self.pair_turns)

    def pullback(self, images: Sequence[Elem], source: FinAbGroup) -> "QuadraticForm":
        return QuadraticForm.from_function(source, lambda g: self.turn(source_map(images, self.group, g)),
                                           check=False)


def source_map(images: Sequence[Elem], target: FinAbGroup, g: Elem) -> Elem:
    """Apply the homomorphism e_i -> images[i] to g."""
    return target.combine(g, images)


# ---------------------------------------------------------------------------
# subgroups

def _closure(G: FinAbGroup, gens: Sequence[Elem]) -> frozenset:
    seen = {G.identity}
    frontier = [G.identity]
    gens = [g for g in gens if any(g)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class Subgroup:
    ambient: FinAbGroup
    generators: tuple
    elements: frozenset = field(compare=False, repr=False)

    @classmethod
    def generated_by(cls, G: FinAbGroup, gens: Iterable[Elem]) -> "Subgroup":
        gens = tuple(G.element(g) for g in gens)
        return cls(G, gens, _closure(G, gens))

    @classmethod
    def whole(cls, G: FinAbGroup) -> "Subgroup":
        return cls.generated_by(G, G.generators())

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.elements

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.ambient == other.ambient and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.ambient, self.elements))

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.ambient.order

    def sorted_elements(self) -> list:
        return sorted(self.elements)

    def abstract(self) -> "AbstractSubgroup":
        """Invariant-factor model of the subgroup with an embedding."""
        G = self.ambient
        gens = [g for g in self.generators if any(g)]
        n = len(gens)
        if n == 0:
            return AbstractSubgroup(FinAbGroup(()), (), self)
        S = [list(g) for g in gens] + [[G.invariants[i] * int(i == j) for j in range(G.rank)]
                                       for i in range(G.rank)]
        kernel = left_integer_kernel(S)
        relations = [w[:n] for w in kernel if any(w[:n])]
        H, images, sections = FinAbGroup.from_relations(n, relations)
        embedding = tuple(G.combine(sec, gens) for sec in sections)
        return AbstractSubgroup(H, embedding, self)


@dataclass(frozen=True)
class AbstractSubgroup:
    group: FinAbGroup
    embedding: tuple  # images of the generators of ``group`` in the ambient group
    subgroup: Subgroup

    def embed(self, h: Elem) -> Elem:
        return self.subgroup.ambient.combine(h, self.embedding)

    @cached_property
    def _coords(self) -> dict:
        return {self.embed(h): h for h in self.group.elements()}

    def coordinates(self, g: Elem) -> Elem:
        try:
            return self._coords[g]
        except KeyError:
            raise GroupError(f"{g} is not in the subgroup") from None


def annihilator(G: FinAbGroup, pairing: Bicharacter, elems: Sequence[Elem], side: str = "right") -> Subgroup:
    """{y in G : pairing(s, y) = 1 for all s} (side='right') or {y : pairing(y, s) = 1}.

    Solved as a system of linear congruences on exponent vectors.
    """
    k = G.rank
    if k == 0:
        return Subgroup.generated_by(G, [])
    cols = []
    for s in elems:
        if side == "right":
            cols.append([pairing.turn(s, G.generator(i)) for i in range(k)])
        else:
            cols.append([pairing.turn(G.generator(i), s) for i in range(k)])
    if not cols:
        return Subgroup.whole(G)
    L = lcm(*(t.denominator for col in cols for t in col))
    c = len(cols)
    M = [[int(cols[j][i] * L) for j in range(c)] for i in range(k)]
    S = M + [[L * int(i == j) for j in range(c)] for i in range(c)]
    kernel = left_integer_kernel(S)
    gens = [G.element(w[:k]) for w in kernel]
    return Subgroup.generated_by(G, gens)


def radical(b: Bicharacter) -> Subgroup:
    """Radical {g : b(g, h) = 1 for all h} of a symmetric bicharacter."""
    if not b.is_symmetric():
        raise GroupError("radical requires a symmetric bicharacter")
    G = b.group
    return annihilator(G, b, G.generators(), side="left")


def diagonalize_quadratic(q: QuadraticForm) -> Optional[Bicharacter]:
    """Some bicharacter r0 with r0(g, g) = q(g), or None if q is not diagonalizable.

    Upper-triangular ansatz: r0(e_i, e_i) = q(e_i), r0(e_i, e_j) = b(e_i, e_j) for
    i < j and 1 below the diagonal.  The only obstruction is q(e_i)^{m_i} != 1.
    """
    G = q.group
    k = G.rank
    for i, m in enumerate(G.invariants):
        if (q.gen_turns[i] * m).denominator != 1:
            return None
    T = tuple(tuple(q.gen_turns[i] if i == j else (q.pair_turns[i][j] if i < j else Fraction(0))
                    for j in range(k)) for i in range(k))
    return Bicharacter(G, T)


def orthogonal_isos(src: FinAbGroup, q: QuadraticForm, dst: FinAbGroup, q2: QuadraticForm,
                    bound: int = 64) -> list:
    """All isomorphisms alpha (as generator images) with q2 o alpha = q."""
    if max(src.order, dst.order) > bound:
        raise GroupTooLarge(f"group order {max(src.order, dst.order)} exceeds bound {bound}")
    if src.order != dst.order or src.elementary_divisors() != dst.elementary_divisors():
        return []
    k = src.rank
    inv = src.invariants
    candidates = list(dst.elements())
    out = []
    images: list = []

    def extend(i):
        if i == k:
            if len(_closure(dst, images)) == dst.order:
                out.append(tuple(images))
            return
        for h in candidates:
            if dst.element_order(h) > inv[i] or inv[i] % dst.element_order(h):
                continue
            if q2.turn(h) != q.gen_turns[i]:
                continue
            if any(_frac_mod1(q2.turn(dst.add(h, images[j])) - q2.turn(h) - q2.turn(images[j]))
                   != q.pair_turns[i][j] for j in range(i)):
                continue
            images.append(h)
            extend(i + 1)
            images.pop()

    extend(0)
    return sorted(out)


def schur_multiplier_order(G: FinAbGroup) -> int:
    """|H^2(G, k^x)| = prod_{i<j} gcd(m_i, m_j)."""
    inv = G.invariants
    out = 1
    for i in range(len(inv)):
        for j in range(i + 1, len(inv)):
            out *= math.gcd(inv[i], inv[j])
    return out


@dataclass(frozen=True)
class Quotient:
    group: FinAbGroup
    images: tuple  # projection of the ambient generators

    def project(self, g: Elem) -> Elem:
        return self.group.combine(g, self.images)


def quotient(G: FinAbGroup, H: Subgroup) -> Quotient:
    if H.ambient != G:
        raise GroupError("subgroup of a different group")
    k = G.rank
    rel = [[G.invariants[i] * int(i == j) for j in range(k)] for i in range(k)]
    rel += [list(h) for h in H.generators if any(h)]
    if k == 0:
        return Quotient(FinAbGroup(()), ())
    Q, images, _ = FinAbGroup.from_relations(k, rel)
    return Quotient(Q, tuple(images))


def pm1_characters(G: FinAbGroup) -> list:
    """Hom(G, {+-1}) in lexicographic order of exponent vectors."""
    choices = [(0, m // 2) if m % 2 == 0 else (0,) for m in G.invariants]
    return [Character(G, c) for c in itertools.product(*choices)]
