"""Quantum linear spaces of symmetric type and bilinear forms on them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .abgroup import Bicharacter, Character, Elem, FinAbGroup
from .linalg import Matrix, zeros
from .scalars import CyclotomicContext, Scalar

MAX_GENERATORS = 30


@dataclass(frozen=True)
class Violation:
    condition: str
    indices: tuple
    message: str

    def to_dict(self) -> dict:
        return {"condition": self.condition, "indices": list(self.indices), "message": self.message}


class InvalidDatum(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(v.message for v in self.violations))


@dataclass(frozen=True)
class SimpleYDLabel:
    degree: Elem
    character: Character

    def inverse(self, group: FinAbGroup) -> "SimpleYDLabel":
        return SimpleYDLabel(group.neg(self.degree), self.character.inverse())


@dataclass(frozen=True)
class QLSDatum:
    ctx: CyclotomicContext
    group: FinAbGroup
    r0: Bicharacter
    degrees: tuple
    characters: tuple

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def dim(self) -> int:
        return self.group.order * 2 ** self.n

    def label(self, i: int) -> SimpleYDLabel:
        return SimpleYDLabel(self.degrees[i], self.characters[i])

    def chi_turn(self, j: int, g: Elem) -> Fraction:
        return self.characters[j].turn(g)

    def chi(self, j: int, g: Elem) -> Scalar:
        """chi_j(g)."""
        return self.ctx.root(self.characters[j].turn(g))

    def with_group_data(self, r0: Bicharacter) -> "QLSDatum":
        return QLSDatum(self.ctx, self.group, r0, self.degrees, self.characters)


def _sub(n: int) -> str:
    return str(n)


def check_datum(group: FinAbGroup, r0: Bicharacter, degrees: Sequence[Elem],
                characters: Sequence[Character]) -> list:
    """All violated conditions (empty list if the datum is valid)."""
    out = []
    if len(degrees) != len(characters):
        return [Violation("shape", (), f"{len(degrees)} degrees but {len(characters)} characters")]
    n = len(degrees)
    if n > MAX_GENERATORS:
        return [Violation("size", (), f"n = {n} exceeds the supported maximum {MAX_GENERATORS}")]
    if r0.group != group:
        return [Violation("shape", (), "r0 is defined on a different group")]
    for i, (g, chi) in enumerate(zip(degrees, characters)):
        if not group.contains(g) or chi.group != group:
            out.append(Violation("shape", (i + 1,), f"generator {i + 1} is not over {group}"))
    if out:
        return out
    for i in range(n):
        t = characters[i].turn(degrees[i])
        if t != Fraction(1, 2):
            out.append(Violation("symmetric_type", (i + 1,),
                                 f"χ{_sub(i + 1)}(g{_sub(i + 1)}) = {_turn_str(t)} ≠ −1"))
    for i in range(n):
        for j in range(i + 1, n):
            t = characters[j].turn(degrees[i]) + characters[i].turn(degrees[j])
            if t.numerator % t.denominator:
                out.append(Violation("pair_condition", (i + 1, j + 1),
                                     f"χ{j + 1}(g{i + 1})·χ{i + 1}(g{j + 1}) ≠ 1"))
    for i in range(n):
        if r0.left_character(degrees[i]) != characters[i]:
            out.append(Violation("r0_left", (i + 1,), f"r0(g{i + 1}, −) ≠ χ{i + 1}"))
        if r0.right_character(degrees[i]) != characters[i].inverse():
            out.append(Violation("r0_right", (i + 1,), f"r0(−, g{i + 1}) ≠ χ{i + 1}^(-1)"))
    return out


def _turn_str(t: Fraction) -> str:
    if t == 0:
        return "1"
    if t == Fraction(1, 2):
        return "−1"
    return f"exp(2πi·{t})"


def validate_datum(ctx: CyclotomicContext, group: FinAbGroup, r0: Bicharacter,
                   degrees: Sequence[Elem], characters: Sequence[Character]) -> QLSDatum:
    if ctx.N % group.exponent or ctx.N % 2:
        raise InvalidDatum([Violation("field", (), f"Q(zeta_{ctx.N}) does not contain the "
                                                   f"{group.exponent}-th roots of unity and −1")])
    violations = check_datum(group, r0, degrees, characters)
    if violations:
        raise InvalidDatum(violations)
    return QLSDatum(ctx, group, r0, tuple(degrees), tuple(characters))


# ---------------------------------------------------------------------------
# bilinear forms on V

@dataclass(frozen=True)
class BilinearFormV:
    """Matrix (r(x_i, x_j))."""

    ctx: CyclotomicContext
    matrix: tuple

    def __post_init__(self):
        M = tuple(tuple(self.ctx.scalar(x) if not isinstance(x, Scalar) else x for x in row)
                  for row in self.matrix)
        if any(len(row) != len(M) for row in M):
            raise ValueError("bilinear form matrix must be square")
        object.__setattr__(self, "matrix", M)

    @classmethod
    def zero(cls, ctx: CyclotomicContext, n: int) -> "BilinearFormV":
        return cls(ctx, tuple(map(tuple, zeros(ctx, n, n))))

    @classmethod
    def from_rows(cls, ctx: CyclotomicContext, rows) -> "BilinearFormV":
        return cls(ctx, tuple(tuple(x if isinstance(x, Scalar) else ctx.scalar(x) for x in row)
                              for row in rows))

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.matrix[i][j]

    def rows(self) -> Matrix:
        return [list(row) for row in self.matrix]

    def transpose(self) -> "BilinearFormV":
        return BilinearFormV(self.ctx, tuple(zip(*self.matrix)) if self.matrix else ())

    def __add__(self, other: "BilinearFormV") -> "BilinearFormV":
        return BilinearFormV(self.ctx, tuple(tuple(a + b for a, b in zip(r, s))
                                             for r, s in zip(self.matrix, other.matrix)))

    def __sub__(self, other: "BilinearFormV") -> "BilinearFormV":
        return BilinearFormV(self.ctx, tuple(tuple(a - b for a, b in zip(r, s))
                                             for r, s in zip(self.matrix, other.matrix)))

    def scale(self, c) -> "BilinearFormV":
        return BilinearFormV(self.ctx, tuple(tuple(a * c for a in r) for r in self.matrix))

    def __neg__(self) -> "BilinearFormV":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(not x for row in self.matrix for x in row)

    def is_symmetric(self) -> bool:
        return self.matrix == self.transpose().matrix

    def is_alternating(self) -> bool:
        return (-self.transpose()).matrix == self.matrix

    def congruent_image(self, f: Matrix) -> "BilinearFormV":
        """The form (u, v) -> self(f u, f v), i.e. f^T M f."""
        n = self.n
        M = self.matrix
        out = []
        for a in range(n):
            row = []
            for b in range(n):
                acc = self.ctx.zero
                for i in range(n):
                    if f[i][a]:
                        for j in range(n):
                            if f[j][b] and M[i][j]:
                                acc = acc + f[i][a] * M[i][j] * f[j][b]
                row.append(acc)
            out.append(tuple(row))
        return BilinearFormV(self.ctx, tuple(out))

    def to_strings(self) -> list:
        return [[x.to_expr() for x in row] for row in self.matrix]


def decompose_form(b: BilinearFormV) -> tuple:
    """(b_sym, b_alt) with b = b_sym + b_alt."""
    half = Fraction(1, 2)
    t = b.transpose()
    return (b + t).scale(half), (b - t).scale(half)


def yd_violations(b: BilinearFormV, V: QLSDatum) -> list:
    out = []
    G = V.group
    for i in range(b.n):
        for j in range(b.n):
            if not b[i, j]:
                continue
            chi = V.characters[i] * V.characters[j]
            if not chi.is_trivial():
                out.append(Violation("module", (i + 1, j + 1),
                                     f"r1(x{i + 1}, x{j + 1}) ≠ 0 but χ{i + 1}χ{j + 1} ≠ ε"))
            if any(G.add(V.degrees[i], V.degrees[j])):
                out.append(Violation("comodule", (i + 1, j + 1),
                                     f"r1(x{i + 1}, x{j + 1}) ≠ 0 but g{i + 1}g{j + 1} ≠ 1"))
    return out


def is_yd_morphism(b: BilinearFormV, V: QLSDatum) -> tuple:
    """(ok, violations)."""
    if b.n != V.n:
        return False, [Violation("shape", (), f"form has size {b.n}, datum has n = {V.n}")]
    v = yd_violations(b, V)
    return not v, v


def braiding_matrix(V: QLSDatum) -> Matrix:
    """Matrix of c(x_i ⊗ x_j) = chi_j(g_i) x_j ⊗ x_i; x_i ⊗ x_j has index i*n + j."""
    n = V.n
    M = zeros(V.ctx, n * n, n * n)
    for i in range(n):
        for j in range(n):
            M[j * n + i][i * n + j] = V.chi(j, V.degrees[i])
    return M


def flip_matrix(ctx: CyclotomicContext, n: int) -> Matrix:
    M = zeros(ctx, n * n, n * n)
    for i in range(n):
        for j in range(n):
            M[j * n + i][i * n + j] = ctx.one
    return M


def form_as_row(b: BilinearFormV) -> list:
    """b as a functional on V ⊗ V (row vector, index i*n + j)."""
    return [b[i, j] for i in range(b.n) for j in range(b.n)]


def yd_form_basis(V: QLSDatum) -> list:
    """Elementary matrices E_ij spanning the YD-morphism forms."""
    out = []
    n = V.n
    for i in range(n):
        for j in range(n):
            if (V.characters[i] * V.characters[j]).is_trivial() and \
                    not any(V.group.add(V.degrees[i], V.degrees[j])):
                M = zeros(V.ctx, n, n)
                M[i][j] = V.ctx.one
                out.append(BilinearFormV(V.ctx, tuple(map(tuple, M))))
    return out
