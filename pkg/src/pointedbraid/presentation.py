"""TOML presentation files: (Gamma, r0, generators, r1) plus metadata.

Schema::

    name = "E(2) symplectic"          # optional
    description = "..."               # optional
    [field]
    N = 4                             # optional, raised to the lcm below
    [group]
    invariants = [2]
    [r0]
    table = [["-1"]]                  # r0(e_i, e_j) on group generators
    [[generator]]                     # one table per x_i
    g = [1]
    chi = [1]                         # exponents: chi(e_i) = zeta_{m_i}^{chi_i}
    [r1]
    matrix = [["0", "1"], ["-1", "0"]]

N is the lcm of the group exponent, 2, field.N and every ``z<m>`` order used.
Groups not in invariant-factor form are converted through Smith normal form.
"""
from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib
import tomli_w

from .abgroup import Bicharacter, FinAbGroup, GroupError, source_map
from .qls import BilinearFormV, InvalidDatum, QLSDatum, is_yd_morphism, validate_datum
from .scalars import CyclotomicContext, ScalarError, lcm, referenced_root_orders


class PresentationError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, source: str = "<input>"):
        self.message = message
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class CategoryPresentation:
    ctx: CyclotomicContext
    datum: QLSDatum
    r1: BilinearFormV
    name: str = ""
    description: str = ""
    normalized_from: Optional[tuple] = field(default=None, compare=False)

    @property
    def group(self) -> FinAbGroup:
        return self.datum.group

    @property
    def n(self) -> int:
        return self.datum.n


class _Lines:
    """Line numbers of TOML headers, for anchoring diagnostics."""

    def __init__(self, text: str):
        self.lines = text.splitlines()

    def header(self, name: str, occurrence: int = 0) -> Optional[int]:
        pat = re.compile(r"^\s*\[\[?\s*" + re.escape(name) + r"\s*\]\]?")
        k = 0
        for no, line in enumerate(self.lines, 1):
            if pat.match(line):
                if k == occurrence:
                    return no
                k += 1
        return None

    def key(self, name: str, after: Optional[int] = None) -> Optional[int]:
        pat = re.compile(r"^\s*" + re.escape(name) + r"\s*=")
        for no, line in enumerate(self.lines, 1):
            if (after is None or no > after) and pat.match(line):
                return no
        return after


def _strings(obj) -> list:
    out = []
    if isinstance(obj, (list, tuple)):
        for x in obj:
            out += _strings(x)
    elif isinstance(obj, str):
        out.append(obj)
    return out


def parse_presentation(source: Union[str, Path], text: Optional[str] = None) -> CategoryPresentation:
    """Parse a presentation from a path, or from ``text`` (``source`` is then a label)."""
    label = str(source)
    if text is None:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise PresentationError(f"cannot read file: {exc.strerror}", source=label) from None
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        line = int(m.group(1)) if m else getattr(exc, "lineno", None)
        nlines = max(1, len(text.splitlines()))
        if line is None and "end of document" in str(exc):
            line = nlines
        if line is not None:
            line = min(line, nlines)
        raise PresentationError(f"TOML syntax error: {exc}", line, label) from None
    return presentation_from_dict(data, _Lines(text), label)


def _int_list(value, what: str, line, label) -> list:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise PresentationError(f"{what} must be a list of integers", line, label)
    return value


def presentation_from_dict(data: dict, lines: Optional[_Lines] = None, label: str = "<input>") -> CategoryPresentation:
    lines = lines or _Lines("")
    known = {"name", "description", "field", "group", "r0", "generator", "r1"}
    for key in data:
        if key not in known:
            raise PresentationError(f"unknown key {key!r}", lines.key(key) or lines.header(key), label)
    group = data.get("group")
    gline = lines.header("group")
    if not isinstance(group, dict) or "invariants" not in group:
        raise PresentationError("missing [group] table with 'invariants'", gline, label)
    inv = _int_list(group["invariants"], "group.invariants", lines.key("invariants", gline), label)
    if any(m < 1 for m in inv):
        raise PresentationError("group invariants must be positive", lines.key("invariants", gline), label)
    G0 = FinAbGroup(tuple(inv))
    gens = data.get("generator", [])
    if not isinstance(gens, list):
        raise PresentationError("'generator' must be an array of tables ([[generator]])", lines.header("generator"), label)
    r0_tab = data.get("r0", {})
    r0_line = lines.header("r0")
    r1_tab = data.get("r1", {})
    r1_line = lines.header("r1")
    fld = data.get("field", {})
    fline = lines.header("field")
    N0 = fld.get("N", 1) if isinstance(fld, dict) else 1
    if not isinstance(N0, int) or N0 < 1:
        raise PresentationError("field.N must be a positive integer", lines.key("N", fline), label)
    table = r0_tab.get("table") if isinstance(r0_tab, dict) else None
    matrix = r1_tab.get("matrix") if isinstance(r1_tab, dict) else None
    orders = set()
    for s in _strings(table) + _strings(matrix):
        orders |= referenced_root_orders(s)
    N = lcm(G0.exponent, 2, N0, *orders)
    ctx = CyclotomicContext(N)
    k0 = G0.rank
    # r0
    if table is None:
        if k0:
            raise PresentationError("missing [r0] table with 'table'", r0_line, label)
        table = []
    tline = lines.key("table", r0_line)
    if not isinstance(table, list) or len(table) != k0 or any(not isinstance(r, list) or len(r) != k0 for r in table):
        raise PresentationError(f"r0.table must be a {k0}x{k0} matrix", tline, label)
    try:
        r0 = Bicharacter.from_scalars(G0, [[ctx.parse(x) for x in row] for row in table], ctx)
    except (ScalarError, GroupError) as exc:
        raise PresentationError(f"r0: {exc}", tline, label) from None
    # generators
    degrees, chars = [], []
    for i, gen in enumerate(gens):
        line = lines.header("generator", i)
        if not isinstance(gen, dict) or set(gen) - {"g", "chi"} or not {"g", "chi"} <= set(gen):
            raise PresentationError(f"generator {i + 1} needs exactly the keys 'g' and 'chi'", line, label)
        g = _int_list(gen["g"], f"generator {i + 1} g", line, label)
        chi = _int_list(gen["chi"], f"generator {i + 1} chi", line, label)
        if len(g) != k0 or len(chi) != k0:
            raise PresentationError(f"generator {i + 1}: g and chi need {k0} entries", line, label)
        degrees.append(G0.element(g))
        chars.append(G0.character(chi))
    n = len(degrees)
    # invariant-factor normalization
    normalized_from = None
    G = G0
    if not G0.is_invariant_factor_form():
        G, images, back = G0.normalized()
        normalized_from = tuple(inv)
        r0 = r0.pullback(back, G)
        degrees = [source_map(images, G, g) for g in degrees]
        chars = [G.character_from_function(lambda h, c=c: c.turn(source_map(back, G0, h))) for c in chars]
    try:
        datum = validate_datum(ctx, G, r0, degrees, chars)
    except InvalidDatum as exc:
        v = exc.violations[0]
        line = lines.header("generator", v.indices[0] - 1) if v.indices else r0_line
        raise PresentationError("; ".join(x.message for x in exc.violations), line, label) from None
    # r1
    if matrix is None:
        if n and r1_tab:
            raise PresentationError("[r1] needs 'matrix'", r1_line, label)
        matrix = [[0] * n for _ in range(n)]
    mline = lines.key("matrix", r1_line)
    if not isinstance(matrix, list) or len(matrix) != n or any(not isinstance(r, list) or len(r) != n for r in matrix):
        raise PresentationError(f"r1.matrix must be a {n}x{n} matrix", mline, label)
    try:
        r1 = BilinearFormV(ctx, tuple(tuple(ctx.parse(x) for x in row) for row in matrix))
    except ScalarError as exc:
        raise PresentationError(f"r1: {exc}", mline, label) from None
    ok, violations = is_yd_morphism(r1, datum)
    if not ok:
        raise PresentationError("r1 is not a Yetter-Drinfeld morphism: " + "; ".join(v.message for v in violations),
                                mline, label)
    name = data.get("name", "")
    desc = data.get("description", "")
    if not isinstance(name, str) or not isinstance(desc, str):
        raise PresentationError("name and description must be strings", lines.key("name"), label)
    return CategoryPresentation(ctx, datum, r1, name, desc, normalized_from)


def presentation_to_dict(p: CategoryPresentation) -> dict:
    V = p.datum
    out: dict = {}
    if p.name:
        out["name"] = p.name
    if p.description:
        out["description"] = p.description
    out["field"] = {"N": p.ctx.N}
    out["group"] = {"invariants": list(V.group.invariants)}
    out["r0"] = {"table": [[x.to_expr() for x in row] for row in V.r0.scalar_table(p.ctx)]}
    if V.n:
        out["generator"] = [{"g": list(V.degrees[i]), "chi": list(V.characters[i].exponents)} for i in range(V.n)]
        out["r1"] = {"matrix": p.r1.to_strings()}
    return out


def serialize(p: CategoryPresentation) -> str:
    return tomli_w.dumps(presentation_to_dict(p))


def make_presentation(datum: QLSDatum, r1: BilinearFormV, name: str = "", description: str = "") -> CategoryPresentation:
    return CategoryPresentation(datum.ctx, datum, r1, name, description)


def load_sample(name: str) -> CategoryPresentation:
    """A shipped sample by file stem, e.g. ``load_sample("e2_symplectic")``."""
    path = sample_dir() / f"{name}.toml"
    return parse_presentation(path)


def sample_dir() -> Path:
    return Path(__file__).parent / "samples"


def sample_names() -> list:
    return sorted(p.stem for p in sample_dir().glob("*.toml"))
