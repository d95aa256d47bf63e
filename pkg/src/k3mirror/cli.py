"""Command-line front end.

Exit codes: 0 success / everything matched, 1 verification mismatch,
2 input error.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import data
from .catalog import (
    CatalogError,
    DEFAULT_SEARCH_BOUND,
    gram_of,
    identify,
    invariants,
    make_witness,
    embed,
    mirror_criterion,
    orthogonal_complement,
    parse_lattice,
    with_u,
)
from .k3 import GramLattice, LatticeError
from .linalg import LinalgError
from .pipeline import (
    ERRATUM,
    FAIL,
    analyze,
    isometry_check,
    isometry_search,
    verify_pair,
)
from .polytope import PolytopeError, polar_dual, polytope_from_json
from .toric import ToricError

OK, MISMATCH, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    paths: tuple = ()
    json: bool = False
    dependent: str | None = None
    bound: int = DEFAULT_SEARCH_BOUND
    case: str | None = None

    @classmethod
    def from_namespace(cls, ns):
        names = ("file", "file_a", "file_b", "gram_file")
        return cls(
            ns.command,
            tuple(getattr(ns, n) for n in names if getattr(ns, n, None)),
            getattr(ns, "json", False),
            getattr(ns, "dependent", None),
            getattr(ns, "bound", DEFAULT_SEARCH_BOUND),
            getattr(ns, "case", None),
        )


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(type(x))


def _emit_json(obj):
    print(json.dumps(obj, indent=2, default=_json_default))


def _fmt_q(qs):
    return "{" + ", ".join(str(q) for q in qs) + "}"


def _parse_indices(text):
    if text is None:
        return None
    try:
        idx = [int(t) - 1 for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"bad index list {text!r}")
    if len(idx) != 3:
        raise InputError("--dependent takes three 1-based indices")
    return idx


def _parse_matrix(text):
    try:
        rows = [[int(x) for x in r.split(",")] for r in text.replace(" ", "").split(";")]
    except ValueError:
        raise InputError(f"bad matrix {text!r}; use 'a,b,c;d,e,f;g,h,i'")
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise InputError("matrix must be 3x3")
    return rows


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(str(exc))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})")


def _load_polytope(path):
    return polytope_from_json(_load_json(path))


def _load_gram(path) -> GramLattice:
    obj = _load_json(path)
    G = obj.get("gram") if isinstance(obj, dict) else obj
    if not isinstance(G, list) or not all(
        isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in r)
        for r in G
    ):
        raise InputError(f"{path}: expected {{\"gram\": [[int, ...], ...]}}")
    return GramLattice.from_matrix(G)


def _side_lines(rep):
    lines = [
        f"polytope        {rep.name}",
        f"s               {rep.s}",
        f"rk L0           {rep.rk_l0}",
        f"rho             {rep.rho}",
    ]
    for edge, dual_edge, a, b in rep.l0_edges:
        lines.append(f"  L0 edge {edge} / {dual_edge}: {a} x {b}")
    if rep.gram is not None:
        lines += [
            f"dependent       {', '.join(str(i + 1) for i in rep.dependent)}",
            f"det             {rep.det}",
            f"signature       {rep.signature}",
            f"A_L             {' x '.join(f'Z/{d}' for d in rep.invariant_factors) or '0'}",
            f"q values        {_fmt_q(rep.q_multiset)}",
            f"square-free det {rep.primitive}",
            "gram",
        ]
        lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in rep.gram]
    else:
        lines.append("gram            not available (rk L0 > 0)")
    return lines


def cmd_dual(args):
    P = _load_polytope(args.file)
    _emit_json(polar_dual(P).to_json())
    return OK


def cmd_analyze(args):
    P = _load_polytope(args.file)
    rep = analyze(P, dependent=_parse_indices(args.dependent))
    if args.json:
        _emit_json(rep.to_dict())
    else:
        print("\n".join(_side_lines(rep)))
    return OK


def cmd_mirror(args):
    A = _load_polytope(args.file_a)
    B = _load_polytope(args.file_b) if args.file_b else polar_dual(A)
    dual_ok = polar_dual(A) == B
    ra, rb = analyze(A), analyze(B)
    checks = {
        "B is the polar dual of A": dual_ok,
        "rho(A) + rho(B) = 20 + rk L0": ra.rho + rb.rho == 20 + ra.rk_l0,
    }
    if ra.gram is not None and rb.gram is not None:
        La, Lb = ra.lattice, rb.lattice
        checks["mirror criterion Pic(A) vs U+Pic(B)"] = mirror_criterion(La, with_u(Lb))
        checks["mirror criterion Pic(B) vs U+Pic(A)"] = mirror_criterion(Lb, with_u(La))
    else:
        checks["Picard lattices available"] = False
    if args.json:
        _emit_json({"A": ra.to_dict(), "B": rb.to_dict(), "checks": checks})
    else:
        print("\n".join(_side_lines(ra)))
        print()
        print("\n".join(_side_lines(rb)))
        print()
        for k, v in checks.items():
            print(f"{'pass' if v else 'FAIL':5s} {k}")
    return OK if all(checks.values()) else MISMATCH


def cmd_identify(args):
    L = _load_gram(args.gram_file)
    results = identify(L, [parse_lattice(args.expr)], args.bound)
    r = results[0]
    if args.json:
        _emit_json({"candidate": str(r.candidate), "tier": r.tier,
                    "witness": r.witness, "mismatch": r.mismatch})
    else:
        print(f"candidate {r.candidate}: {r.tier}")
        if r.witness:
            print("witness P (P^T G P = target):")
            for row in r.witness:
                print("  " + " ".join(f"{x:3d}" for x in row))
        if r.mismatch:
            print("differs in: " + ", ".join(r.mismatch))
    return OK if r.invariant_match else MISMATCH


def cmd_isometry(args):
    A, B = _load_polytope(args.file_a), _load_polytope(args.file_b)
    if args.matrix:
        M = _parse_matrix(args.matrix)
        try:
            ok = isometry_check(A, B, M)
        except ValueError as exc:
            raise InputError(str(exc))
    else:
        M = isometry_search(A, B)
        ok = M is not None
    if args.json:
        _emit_json({"isometric": ok, "matrix": M})
    else:
        print(f"isometric: {ok}")
        if ok:
            for row in M:
                print("  " + " ".join(f"{x:3d}" for x in row))
    return OK if ok else MISMATCH


def _load_sub(text, ambient):
    try:
        return embed(ambient, parse_lattice(text))
    except CatalogError:
        pass
    obj = _load_json(text)
    vecs = obj.get("vectors") if isinstance(obj, dict) else obj
    if not isinstance(vecs, list):
        raise InputError(f"{text}: expected {{\"vectors\": [[...], ...]}}")
    return make_witness(gram_of(ambient).gram, vecs, ambient)


def cmd_complement(args):
    ambient = parse_lattice(args.ambient)
    W = _load_sub(args.sub, ambient)
    C = orthogonal_complement(W)
    inv = invariants(C)
    out = {
        "ambient": str(ambient),
        "sub_rank": len(W.sub_basis),
        "sub_primitive": W.primitive,
        "rank": inv.rank,
        "signature": list(inv.signature),
        "det": C.det,
        "invariant_factors": list(inv.factors),
        "q_values": [str(q) for q in inv.q_multiset],
        "gram": C.matrix(),
    }
    if args.json:
        _emit_json(out)
    else:
        for k in ("ambient", "sub_rank", "sub_primitive", "rank", "signature", "det",
                  "invariant_factors"):
            print(f"{k:18s}{out[k]}")
        print(f"{'q_values':18s}{_fmt_q(inv.q_multiset)}")
    return OK


def _summary_table(reports):
    head = ("case", "s", "s*", "rkL0", "rho", "rho*", "det", "det*",
            "Pic(Delta*)", "Pic(Delta)", "verdict")
    rows = [head]
    for c, r in reports:
        status = "ok" if r.strict_verdict else ("ok (errata)" if r.verdict else "MISMATCH")
        rows.append((
            c.name, r.delta.s, r.dual.s, r.delta.rk_l0, r.delta.rho, r.dual.rho,
            r.delta.det, r.dual.det, c.expected.pic_dual, c.expected.pic, status,
        ))
    widths = [max(len(str(row[k])) for row in rows) for k in range(len(head))]
    return ["  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip() for row in rows]


def cmd_dataset(args):
    cases = data.CASES
    if args.case:
        try:
            cases = (data.case_by_name(args.case),)
        except KeyError as exc:
            raise InputError(str(exc.args[0]))
    reports = [(c, verify_pair(c, args.bound)) for c in cases]
    ok = all(r.strict_verdict if args.strict else r.verdict for _, r in reports)
    if args.json:
        _emit_json({"ok": ok, "cases": [r.to_dict() for _, r in reports]})
        return OK if ok else MISMATCH
    print("\n".join(_summary_table(reports)))
    for c, r in reports:
        notes = [ch for ch in r.checks if ch.status in (FAIL, ERRATUM)]
        if args.verbose:
            notes = r.checks
        if notes:
            print()
            print(f"[{c.name}]")
            for ch in notes:
                print(f"  {ch.status:7s} {ch.name}" + (f": {ch.detail}" if ch.detail else ""))
    print()
    print("all expectations met" if ok else "verification mismatch")
    return OK if ok else MISMATCH


def build_parser():
    p = argparse.ArgumentParser(prog="k3mirror", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dual", help="polar dual of a polytope JSON file")
    s.add_argument("file")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("analyze", help="one-sided report")
    s.add_argument("file")
    s.add_argument("--dependent", help="1-based indices of the eliminated divisors, e.g. 1,4,5")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("mirror", help="pair report (B defaults to the polar dual of A)")
    s.add_argument("file_a")
    s.add_argument("file_b", nargs="?")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_mirror)

    s = sub.add_parser("identify", help="compare a Gram matrix with a named lattice")
    s.add_argument("gram_file")
    s.add_argument("expr")
    s.add_argument("--bound", type=int, default=DEFAULT_SEARCH_BOUND)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_identify)

    s = sub.add_parser("isometry", help="GL3(Z) isometry between two polytopes")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--matrix", help="row-action matrix 'a,b,c;d,e,f;g,h,i'")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_isometry)

    s = sub.add_parser("dataset", help="built-in transpose-dual pairs")
    s.add_argument("action", choices=["run"])
    s.add_argument("--case")
    s.add_argument("--bound", type=int, default=DEFAULT_SEARCH_BOUND)
    s.add_argument("--strict", action="store_true", help="count documented errata as mismatches")
    s.add_argument("--verbose", "-v", action="store_true", help="list every check")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_dataset)

    s = sub.add_parser("complement", help="orthogonal complement in a named lattice")
    s.add_argument("--ambient", required=True)
    s.add_argument("--sub", required=True, help="named expression or vectors JSON file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_complement)
    return p


def parse(argv=None):
    """Parsed namespace plus its config view; raises SystemExit on bad usage."""
    args = build_parser().parse_args(argv)
    return args, CliConfig.from_namespace(args)


def run(argv=None) -> int:
    try:
        args, _ = parse(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except (InputError, PolytopeError, ToricError, LatticeError, CatalogError,
            LinalgError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main():
    sys.exit(run())
