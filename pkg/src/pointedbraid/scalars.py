"""Exact arithmetic in a cyclotomic field Q(zeta_N).

Elements are stored as coordinate vectors in the power basis
1, z, ..., z^(phi(N)-1) and reduced modulo the N-th cyclotomic polynomial,
so equality is coordinate equality.

Roots of unity are also handled in "turn" form: a Fraction t in [0, 1)
stands for exp(2 pi i t).  Multiplying roots of unity is then addition of
turns, which is what the group-theoretic layers use internally.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Number = Union[int, Fraction, "Scalar"]


class ScalarError(ValueError):
    pass


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # num, den low -> high, den monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for d in range(len(num) - 1, dn - 1, -1):
        c = num[d]
        if c:
            out[d - dn] = c
            for k in range(dn + 1):
                num[d - dn + k] -= c * den[k]
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ScalarError(f"cyclotomic order must be positive, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


class CyclotomicContext:
    """The field Q(zeta_N).  Instances are interned per N."""

    _cache: dict[int, "CyclotomicContext"] = {}

    def __new__(cls, N: int):
        N = int(N)
        if N < 1:
            raise ScalarError(f"N must be >= 1, got {N}")
        ctx = cls._cache.get(N)
        if ctx is None:
            ctx = super().__new__(cls)
            ctx._init(N)
            cls._cache[N] = ctx
        return ctx

    def _init(self, N: int) -> None:
        self.N = N
        self.modulus = cyclotomic_poly(N)
        self.phi = len(self.modulus) - 1
        zero = (Fraction(0),) * self.phi
        self._zero = Scalar._raw(self, zero)
        self._one = Scalar._raw(self, (Fraction(1),) + zero[1:])
        powers = []
        cur = [Fraction(1)] + [Fraction(0)] * (self.phi - 1)
        for _ in range(N):
            powers.append(Scalar._raw(self, tuple(cur)))
            cur = self._reduce([Fraction(0)] + cur)
        self._powers = powers
        self._log = {p.coeffs: k for k, p in enumerate(powers)}
        # zeta^i * zeta^k in the power basis, as sparse [(j, c)] per i < phi
        self._shift = [[[(j, c) for j, c in enumerate(powers[(i + k) % N].coeffs) if c] for i in range(self.phi)]
                       for k in range(N)]
        for k, p in enumerate(powers):
            p._root = k

    def __repr__(self) -> str:
        return f"CyclotomicContext(N={self.N})"

    def __reduce__(self):
        return (CyclotomicContext, (self.N,))

    def _reduce(self, poly: list) -> list:
        phi, mod = self.phi, self.modulus
        poly = list(poly)
        for d in range(len(poly) - 1, phi - 1, -1):
            c = poly[d]
            if c:
                base = d - phi
                for k in range(phi):
                    if mod[k]:
                        poly[base + k] -= c * mod[k]
            poly[d] = 0
        poly = poly[:phi]
        if len(poly) < phi:
            poly += [Fraction(0)] * (phi - len(poly))
        return poly

    @property
    def zero(self) -> "Scalar":
        return self._zero

    @property
    def one(self) -> "Scalar":
        return self._one

    def zeta(self, k: int = 1) -> "Scalar":
        """zeta_N ** k."""
        return self._powers[k % self.N]

    def root(self, turn: Fraction) -> "Scalar":
        """exp(2 pi i * turn); turn*N must be an integer."""
        k = turn * self.N
        if k.denominator != 1:
            raise ScalarError(f"root of unity of turn {turn} is not in Q(zeta_{self.N})")
        return self._powers[int(k) % self.N]

    def scalar(self, value: Number) -> "Scalar":
        if isinstance(value, Scalar):
            if value.ctx is not self:
                raise ScalarError(f"context mismatch: N={value.ctx.N} vs N={self.N}")
            return value
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise ScalarError(f"cannot coerce {value!r} to an exact scalar")
        return Scalar._raw(self, (Fraction(value),) + self._zero.coeffs[1:])

    def log_root(self, s: "Scalar") -> Fraction | None:
        """Turn t with s == root(t), or None if s is not an N-th root of unity."""
        k = self._log.get(s.coeffs)
        if k is None:
            return None
        return Fraction(k, self.N)

    def parse(self, text: Union[str, int]) -> "Scalar":
        """Parse ``"3/2 - z^3 + 2*z"`` style expressions (z is zeta_N).

        ``z<m>^k`` denotes zeta_m^k and requires m | N.
        """
        if isinstance(text, int) and not isinstance(text, bool):
            return self.scalar(text)
        if not isinstance(text, str):
            raise ScalarError(f"scalar expression must be a string or integer, got {text!r}")
        return _Parser(self, text).parse()


def root_of_unity(ctx: CyclotomicContext, k: int) -> "Scalar":
    return ctx.zeta(k)


class Scalar:
    __slots__ = ("ctx", "coeffs", "_hash", "_root")

    def __init__(self, ctx: CyclotomicContext, coeffs: Iterable) -> None:
        coeffs = [Fraction(c) for c in coeffs]
        self.ctx = ctx
        self.coeffs = tuple(ctx._reduce(coeffs))
        self._hash = None
        self._root = None

    @classmethod
    def _raw(cls, ctx, coeffs: tuple) -> "Scalar":
        s = object.__new__(cls)
        s.ctx = ctx
        s.coeffs = coeffs
        s._hash = None
        s._root = None
        return s

    def _times_root(self, k: int) -> "Scalar":
        """self * zeta^k without general reduction."""
        ctx = self.ctx
        if k == 0:
            return self
        if 2 * k == ctx.N:
            return Scalar._raw(ctx, tuple(-a for a in self.coeffs))
        out = [0] * ctx.phi
        shift = ctx._shift[k]
        for i, a in enumerate(self.coeffs):
            if a:
                for j, c in shift[i]:
                    out[j] += a if c == 1 else (-a if c == -1 else a * c)
        return Scalar._raw(ctx, tuple(Fraction(x) for x in out))

    # -- helpers
    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx:
                raise ScalarError(f"context mismatch: N={self.ctx.N} vs N={other.ctx.N}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ctx.scalar(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.ctx.N, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"Scalar({self.to_expr()!r}, N={self.ctx.N})"

    def __str__(self) -> str:
        return self.to_expr()

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._raw(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._raw(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Scalar._raw(self.ctx, tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other._root is not None:
            return self._times_root(other._root)
        if self._root is not None:
            return other._times_root(self._root)
        a, b = self.coeffs, other.coeffs
        if not any(b[1:]):
            c = b[0]
            return Scalar._raw(self.ctx, tuple(x * c for x in a))
        if not any(a[1:]):
            c = a[0]
            return Scalar._raw(self.ctx, tuple(x * c for x in b))
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Scalar._raw(self.ctx, tuple(self.ctx._reduce(prod)))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_N)")
        if self.is_rational():
            return Scalar._raw(self.ctx, (1 / self.coeffs[0],) + self.coeffs[1:])
        k = self.ctx.log_root(self)
        if k is not None:
            return self.ctx.root(-k)
        return self._solve_inverse()

    def _solve_inverse(self) -> "Scalar":
        # columns of the multiplication-by-self matrix are self * z^k
        phi = self.ctx.phi
        z = self.ctx.zeta(1)
        cols = []
        cur = self
        for _ in range(phi):
            cols.append(cur.coeffs)
            cur = cur * z
        aug = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for col in range(phi):
            piv = next(r for r in range(col, phi) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [v / p for v in aug[col]]
            for r in range(phi):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
        return Scalar._raw(self.ctx, tuple(aug[i][phi] for i in range(phi)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "Scalar":
        """Image under z -> z^-1 (complex conjugation)."""
        out = self.ctx.zero
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + self.ctx.zeta(-k) * c
        return out

    def to_expr(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if k == 0:
                body = str(mag)
            else:
                zk = "z" if k == 1 else f"z^{k}"
                body = zk if mag == 1 else f"{mag}*{zk}"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


_TOKEN = re.compile(r"\s*(?:(\d+)|(z)(\d*)|(\^)|([-+*/()])|(−))")


class _Parser:
    def __init__(self, ctx: CyclotomicContext, text: str) -> None:
        self.ctx = ctx
        self.text = text
        self.tokens = self._lex(text)
        self.pos = 0

    def _lex(self, text):
        toks = []
        i = 0
        text = text.rstrip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ScalarError(f"unexpected character at position {i} in {text!r}")
            if m.group(1):
                toks.append(("int", int(m.group(1)), i))
            elif m.group(2):
                toks.append(("z", int(m.group(3)) if m.group(3) else None, i))
            elif m.group(4):
                toks.append(("^", None, i))
            elif m.group(5):
                toks.append((m.group(5), None, i))
            else:
                toks.append(("-", None, i))
            i = m.end()
        return toks

    def _peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def _take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise ScalarError(f"unexpected end of expression {self.text!r}")
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ScalarError(f"expected {kind!r} at position {tok[2]} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Scalar:
        if not self.tokens:
            raise ScalarError("empty scalar expression")
        val = self._expr()
        if self.pos != len(self.tokens):
            raise ScalarError(f"trailing input at position {self.tokens[self.pos][2]} in {self.text!r}")
        return val

    def _expr(self):
        val = self._term()
        while self._peek() in ("+", "-"):
            op = self._take()[0]
            rhs = self._term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def _term(self):
        val = self._unary()
        while self._peek() in ("*", "/"):
            op = self._take()[0]
            rhs = self._unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def _unary(self):
        if self._peek() == "-":
            self._take()
            return -self._unary()
        if self._peek() == "+":
            self._take()
            return self._unary()
        return self._atom()

    def _signed_int(self):
        neg = False
        if self._peek() == "-":
            self._take()
            neg = True
        v = self._take("int")[1]
        return -v if neg else v

    def _atom(self):
        kind = self._peek()
        if kind == "int":
            return self.ctx.scalar(self._take()[1])
        if kind == "(":
            self._take()
            val = self._expr()
            self._take(")")
            return val
        if kind == "z":
            _, m, where = self._take()
            k = 1
            if self._peek() == "^":
                self._take()
                k = self._signed_int()
            N = self.ctx.N
            if m is None:
                return self.ctx.zeta(k)
            if m < 1 or N % m:
                raise ScalarError(f"z{m} at position {where} needs {m} | N={N}")
            return self.ctx.zeta(k * (N // m))
        raise ScalarError(f"unexpected token in {self.text!r}")


def referenced_root_orders(text: Union[str, int]) -> set[int]:
    """Orders m of all ``z<m>`` tokens in an expression (used to choose N)."""
    if not isinstance(text, str):
        return set()
    return {int(m) for m in re.findall(r"z(\d+)", text)}


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
