"""Command-line front end: ``pointedbraid <command> --input file.toml``.

Exit codes: 0 pass, 1 fail or inequivalent, 2 undecided at a bound, 3 input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from . import __version__
from .abgroup import GroupError, GroupTooLarge
from .double import NotSelfDual, double_checks, drinfeld_double, is_self_dual
from .hopf import BoundExceeded, HopfAlgebra, basis_label, verify_hopf_axioms
from .presentation import (CategoryPresentation, PresentationError, make_presentation, parse_presentation,
                           serialize)
from .qls import InvalidDatum
from .quadruple import (aut_br, cocycle_space, h2_inv, hopf_functoriality_check,
                        is_equivalent, normalize)
from .rform import (InvalidForm, RForm, extension_comodule, hexagons_hold, ribbon_element, ribbon_structures,
                    squared_braiding, standard_test_comodules, twist_compatible, verify_cqt)
from .scalars import ScalarError
from .symcenter import symmetric_center

COMMANDS = ("verify-hopf", "build-rform", "verify-cqt", "braid", "ribbon", "sym-center", "normalize",
            "equiv", "cocycles", "h2inv", "autbr", "double", "report-all")
EXIT = {"pass": 0, "fail": 1, "undecided": 2, "error": 3}


class InputError(ValueError):
    pass


@dataclass
class Flags:
    bound_group: int = 64
    bound_dim: Optional[int] = None
    mode: str = "full"
    seed: int = 0
    against: Optional[str] = None
    matrix: Optional[str] = None
    emit: Optional[str] = None


@dataclass
class Report:
    command: str
    status: str
    payload: dict
    version: str = __version__
    timing: Optional[float] = None
    input: str = ""
    seed: int = 0

    def to_dict(self) -> dict:
        out = {"command": self.command, "status": self.status, "payload": self.payload,
               "version": self.version, "input": self.input, "seed": self.seed}
        if self.timing is not None:
            out["timing_seconds"] = round(self.timing, 6)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False, default=_jsonable) + "\n"

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, set, frozenset)):
        return list(x)
    if hasattr(x, "to_expr"):
        return x.to_expr()
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def _dim_bound(flags: Flags, default: int) -> int:
    return flags.bound_dim if flags.bound_dim is not None else default


def _worst(statuses) -> str:
    order = ["pass", "undecided", "fail", "error"]
    return max(statuses, key=order.index, default="pass")


# ---------------------------------------------------------------------------
# commands: each returns (status, payload)

def cmd_verify_hopf(p: CategoryPresentation, flags: Flags):
    H = HopfAlgebra(p.datum)
    rep = verify_hopf_axioms(H, bound=_dim_bound(flags, 1024))
    ok = rep["status"] == "pass" and rep["dim"] == rep["expected_dim"]
    return ("pass" if ok else "fail"), rep


def cmd_build_rform(p: CategoryPresentation, flags: Flags):
    bound = _dim_bound(flags, 256)
    H = HopfAlgebra(p.datum)
    if H.dim > bound:
        raise BoundExceeded(f"dim H = {H.dim} exceeds bound {bound}")
    r = RForm(p.datum, p.r1, algebra=H)
    G = p.group
    gens = [(e, 0) for e in G.generators()] + [(G.identity, 1 << i) for i in range(p.n)]
    digest = hashlib.sha256()
    nonzero = 0
    for a in H.basis:
        for b in H.basis:
            v = r.value(a, b)
            if v:
                nonzero += 1
                digest.update(f"{a}|{b}|{v.to_expr()};".encode())
    payload = {
        "dim": H.dim,
        "generator_values": [{"left": basis_label(a), "right": basis_label(b), "value": r.value(a, b).to_expr()}
                             for a in gens for b in gens],
        "nonzero_entries": nonzero,
        "table_sha256": digest.hexdigest(),
    }
    return "pass", payload


def cmd_verify_cqt(p: CategoryPresentation, flags: Flags):
    bound = _dim_bound(flags, 256)
    H = HopfAlgebra(p.datum)
    if H.dim > bound:
        raise BoundExceeded(f"dim H = {H.dim} exceeds bound {bound}")
    r = RForm(p.datum, p.r1, algebra=H)
    rep = verify_cqt(r, mode=flags.mode, bound=bound)
    return rep["status"], rep


def cmd_braid(p: CategoryPresentation, flags: Flags):
    bound = _dim_bound(flags, 256)
    H = HopfAlgebra(p.datum)
    if H.dim > bound:
        raise BoundExceeded(f"dim H = {H.dim} exceeds bound {bound}")
    ctx = p.ctx
    r = RForm(p.datum, p.r1, algebra=H)
    comods = [extension_comodule(H, i) for i in range(p.n)]
    pairs = []
    ok = True
    for i, X in enumerate(comods):
        for j, Y in enumerate(comods):
            S = squared_braiding(r, X, Y)
            s = p.r1[i, j] - p.r1[j, i]
            expected = [[ctx.one if a == b else ctx.zero for b in range(4)] for a in range(4)]
            expected[0][3] = s
            match = S == expected
            ok &= match
            pairs.append({"i": i + 1, "j": j + 1, "s": s.to_expr(), "matches": match})
    tests = standard_test_comodules(H)[:4]
    hex_ok = all(hexagons_hold(r, U, V, W) for U in tests for V in tests for W in tests) if H.dim <= 64 else None
    if hex_ok is False:
        ok = False
    return ("pass" if ok else "fail"), {"squared_braiding": pairs, "hexagons": hex_ok}


def cmd_ribbon(p: CategoryPresentation, flags: Flags):
    bound = _dim_bound(flags, 256)
    V = p.datum
    structures = ribbon_structures(V)
    out = {"count": len(structures), "structures": []}
    H = HopfAlgebra(V)
    check = H.dim <= bound
    ok = len(structures) >= 1 or V.n == 0
    if check:
        r = RForm(V, p.r1, algebra=H)
        tests = standard_test_comodules(H)
    for rc in structures:
        entry = {"gamma": list(rc.exponents)}
        if check:
            alpha = ribbon_element(r, rc.character)
            compat = all(twist_compatible(r, alpha, X, Y) for X in tests for Y in tests)
            entry["twist_compatible"] = compat
            ok &= compat
        out["structures"].append(entry)
    out["twist_checked"] = check
    return ("pass" if ok else "fail"), out


def cmd_sym_center(p: CategoryPresentation, flags: Flags):
    res = symmetric_center(p.datum, p.r1, check=HopfAlgebra(p.datum).dim <= _dim_bound(flags, 256))
    return "pass", res.to_dict()


def _quadruple_payload(Q) -> dict:
    G = Q.group
    return {"group": list(G.invariants),
            "q_on_generators": [str(Q.q.turn(e)) for e in G.generators()],
            "degrees": [list(g) for g in Q.datum.degrees],
            "characters": [list(c.exponents) for c in Q.datum.characters],
            "r": Q.r.to_strings()}


def cmd_normalize(p: CategoryPresentation, flags: Flags):
    Q = normalize(p.datum, p.r1)
    again = normalize(Q.datum, Q.r)
    norm = make_presentation(Q.datum, Q.r, name=f"{p.name} (normalized)" if p.name else "normalized",
                             description="alternating part of r1")
    text = serialize(norm)
    if flags.emit:
        Path(flags.emit).write_text(text, encoding="utf-8")
    payload = {"quadruple": _quadruple_payload(Q), "idempotent": again.key() == Q.key(), "toml": text}
    return ("pass" if payload["idempotent"] else "fail"), payload


def cmd_equiv(p: CategoryPresentation, flags: Flags):
    if not flags.against:
        raise InputError("equiv needs a second presentation: --against FILE")
    p2 = parse_presentation(flags.against)
    if p2.ctx.N != p.ctx.N:
        raise InputError(f"presentations use different fields (N = {p.ctx.N} vs {p2.ctx.N}); "
                         "set [field] N to a common value")
    Q, Q2 = normalize(p.datum, p.r1), normalize(p2.datum, p2.r1)
    res = is_equivalent(Q, Q2, bound=flags.bound_group)
    payload = res.to_dict()
    if res.witness is not None:
        bound = _dim_bound(flags, 64)
        payload["functoriality"] = hopf_functoriality_check(Q, Q2, res.witness, bound=bound)
    status = {"equivalent": "pass", "inequivalent": "fail", "undecided": "undecided"}[res.status]
    return status, payload


def cmd_cocycles(p: CategoryPresentation, flags: Flags):
    cs = cocycle_space(p.datum)
    return "pass", {"dimension": cs.dimension, "basis": [b.to_strings() for b in cs.basis]}


def cmd_h2inv(p: CategoryPresentation, flags: Flags):
    return "pass", h2_inv(p.datum).to_dict()


def _parse_matrix(text: str, p: CategoryPresentation) -> list:
    try:
        rows = json.loads(text)
        return [[p.ctx.parse(x) for x in row] for row in rows]
    except (json.JSONDecodeError, TypeError, ScalarError) as exc:
        raise InputError(f"--matrix must be a JSON list of rows of scalars: {exc}") from None


def cmd_autbr(p: CategoryPresentation, flags: Flags):
    Q = normalize(p.datum, p.r1)
    A = aut_br(Q, bound=flags.bound_group)
    payload = {"orthogonal_part": [[list(g) for g in alpha] for alpha in A.orthogonal_part],
               "orthogonal_part_size": len(A.orthogonal_part)}
    if flags.matrix:
        f = _parse_matrix(flags.matrix, p)
        ok, rep = A.stabilizer_test(f)
        payload["stabilizer_test"] = {"accepted": ok,
                                      "sign_class": [[x.to_expr() for x in row] for row in rep] if ok else None}
    return "pass", payload


def cmd_double(p: CategoryPresentation, flags: Flags):
    res = drinfeld_double(p.datum)
    checks = double_checks(res, bound_dim=_dim_bound(flags, 256), bound_group=flags.bound_group)
    dbl = make_presentation(res.dv_datum, res.r_dv, name=f"D({p.name})" if p.name else "double",
                            description="double W + W* over Sigma with its canonical form")
    text = serialize(dbl)
    if flags.emit:
        Path(flags.emit).write_text(text, encoding="utf-8")
    payload = dict(res.to_dict(), checks=checks, toml=text)
    return ("pass" if all(checks.values()) else "fail"), payload


def cmd_report_all(p: CategoryPresentation, flags: Flags):
    sections = {}
    for name in ("verify-hopf", "build-rform", "verify-cqt", "braid", "ribbon", "sym-center", "normalize",
                 "cocycles", "h2inv", "autbr", "double"):
        if name == "double" and not is_self_dual(p.datum)[0]:
            sections[name] = {"status": "skipped", "payload": {"reason": "self-duality required"}}
            continue
        status, payload = _guarded(HANDLERS[name], p, flags)
        sections[name] = {"status": status, "payload": payload}
    statuses = [s["status"] for s in sections.values() if s["status"] != "skipped"]
    return _worst(statuses), sections


HANDLERS: dict = {
    "verify-hopf": cmd_verify_hopf, "build-rform": cmd_build_rform, "verify-cqt": cmd_verify_cqt,
    "braid": cmd_braid, "ribbon": cmd_ribbon, "sym-center": cmd_sym_center, "normalize": cmd_normalize,
    "equiv": cmd_equiv, "cocycles": cmd_cocycles, "h2inv": cmd_h2inv, "autbr": cmd_autbr,
    "double": cmd_double, "report-all": cmd_report_all,
}

INPUT_ERRORS = (PresentationError, InvalidDatum, InvalidForm, NotSelfDual, InputError, ScalarError, GroupError)


def _guarded(handler: Callable, p: CategoryPresentation, flags: Flags):
    try:
        return handler(p, flags)
    except (BoundExceeded, GroupTooLarge) as exc:
        return "undecided", {"reason": f"undecided at bound: {exc}"}


def run(command: str, presentation: CategoryPresentation, flags: Optional[Flags] = None,
        label: str = "") -> Report:
    flags = flags or Flags()
    if command not in HANDLERS:
        raise InputError(f"unknown command {command!r}")
    status, payload = _guarded(HANDLERS[command], presentation, flags)
    return Report(command, status, payload, input=label, seed=flags.seed)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pointedbraid", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", "-i", required=True, help="presentation file (TOML)")
    ap.add_argument("--against", help="second presentation for equiv")
    ap.add_argument("--bound-group", type=int, default=64, help="max |Gamma| for isomorphism search (default 64)")
    ap.add_argument("--bound-dim", type=int, default=None,
                    help="max dim H for exhaustive checks (default 1024 for verify-hopf, 256 otherwise)")
    ap.add_argument("--mode", choices=("full", "h1"), default="full", help="verify-cqt mode")
    ap.add_argument("--json", dest="json_out", help="also write the JSON report to this file")
    ap.add_argument("--seed", type=int, default=0, help="recorded in the report")
    ap.add_argument("--matrix", help="autbr: JSON matrix f for the stabilizer test")
    ap.add_argument("--emit", help="normalize/double: write the resulting presentation here")
    ap.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    flags = Flags(bound_group=args.bound_group, bound_dim=args.bound_dim, mode=args.mode, seed=args.seed,
                  against=args.against, matrix=args.matrix, emit=args.emit)
    t0 = time.perf_counter()
    try:
        p = parse_presentation(args.input)
        report = run(args.command, p, flags, label=Path(args.input).name)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        report = Report(args.command, "error", {"message": str(exc)}, input=Path(args.input).name, seed=args.seed)
    if args.timing:
        report.timing = time.perf_counter() - t0
    text = report.to_json()
    sys.stdout.write(text)
    if args.json_out:
        Path(args.json_out).write_text(text, encoding="utf-8")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
