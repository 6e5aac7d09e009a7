"""``dtrunc``: command-line front end.

Exit status: 0 all checks pass, 1 a check fails, 2 budget or certification
inconclusive, 3 input error.  Reports are JSON with sorted keys.

Simplicial-set arguments accept a file (``.ssx``, ``.cat``) or a named
construction: ``delta:N``, ``boundary:N``, ``horn:N:I``, ``nerve:NAME``
(NAME in bz2, iso, interval, poset22).  Operad arguments accept ``.opd`` files
or ``comm``, ``ass``, ``triv``, ``idem``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .category import Category, nerve_category, product_category, projection_functor
from .constructions import (
    ConeJ,
    ConeSigma,
    Product,
    Pushout,
    RelCylinder,
    boundary,
    horn,
    standard,
    subcomplex,
)
from .errors import BudgetExceeded, DtruncError, NotCertified
from .operad import (
    ColoredOperad,
    h_d_operad,
    is_d_operad,
    iso_over_fin,
    multi_mapping_space,
    obj_name,
    operadic_nerve,
    to_colored,
    validate_operad,
)
from .report import CATEGORIES, NERVE_CAP, OPERADS, SUITES, aggregate, named_category, run_suite
from .solver import (
    DEFAULT_BUDGET,
    is_cocartesian_edge,
    is_inner_fibration_up_to,
    iso_check,
    quasicategory_report,
)
from .sset import SMap, SSet
from .truncation import hom_middle, hom_right, is_d_category, truncate
from .verify import (
    alpha_verify,
    equivalence_relation_verify,
    homrel_quadruple_verify,
    universal_property_verify,
)

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class InputError(DtruncError):
    pass


# -- argument loading --------------------------------------------------------------
def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {text!r}") from None


def load_category(token: str, fmt: str | None = None) -> Category:
    if token in CATEGORIES:
        return named_category(token)
    obj = io.read(token, fmt or "cat")
    if not isinstance(obj, Category):
        raise InputError(f"{token} is not a category")
    return obj


def load_sset(token: str, fmt: str | None = None) -> SSet:
    head, _, rest = token.partition(":")
    args = rest.split(":") if rest else []
    if head == "delta" and len(args) == 1:
        return standard(_int(args[0], "dimension"))
    if head == "boundary" and len(args) == 1:
        return boundary(_int(args[0], "dimension"))
    if head == "horn" and len(args) == 2:
        return horn(_int(args[0], "dimension"), _int(args[1], "horn index"))
    if head == "nerve" and len(args) == 1:
        C = load_category(args[0])
        return nerve_category(C, None if C.is_acyclic() else NERVE_CAP)
    if not Path(token).exists():
        raise InputError(f"no such file or construction: {token}")
    obj = io.read(token, fmt)
    if isinstance(obj, Category):
        return nerve_category(obj, None if obj.is_acyclic() else NERVE_CAP)
    if not isinstance(obj, SSet):
        raise InputError(f"{token} is not a simplicial set")
    return obj


def load_operad(token: str, fmt: str | None = None, arity_cap: int | None = None) -> ColoredOperad:
    if token in OPERADS:
        return OPERADS[token](3 if arity_cap is None else arity_cap)
    obj = io.read(token, fmt or "opd", arity_cap=arity_cap)
    if not isinstance(obj, ColoredOperad):
        raise InputError(f"{token} is not an operad")
    return obj


def _ids(text: str | None) -> list[str]:
    return [t for t in (text or "").split(",") if t]


def _need_d(args) -> int:
    if args.d is None:
        raise InputError("--d is required")
    return args.d


# -- output ----------------------------------------------------------------------------
def _emit_text(text: str, args) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_report(rep: dict, args) -> int:
    rep = dict(rep)
    rep.setdefault("budget", args.budget)
    _emit_text(json.dumps(rep, sort_keys=True, indent=1, ensure_ascii=False, default=str) + "\n", args)
    return EXIT_PASS if rep.get("ok") else EXIT_FAIL


# -- subcommands ---------------------------------------------------------------------
def cmd_build(args) -> int:
    what, rest = args.what, args.args
    if what == "operad":
        if len(rest) != 1:
            raise InputError("build operad takes one name or file")
        _emit_text(io.serialize(load_operad(rest[0], args.format, args.arity_cap)), args)
        return EXIT_PASS
    if what == "category":
        if len(rest) != 1:
            raise InputError("build category takes one name or file")
        _emit_text(io.serialize(load_category(rest[0])), args)
        return EXIT_PASS
    if what in ("delta", "boundary"):
        if len(rest) != 1:
            raise InputError(f"build {what} takes a dimension")
        X = load_sset(f"{what}:{rest[0]}")
    elif what == "horn":
        if len(rest) != 2:
            raise InputError("build horn takes a dimension and an index")
        X = load_sset(f"horn:{rest[0]}:{rest[1]}")
    elif what == "nerve":
        if len(rest) != 1:
            raise InputError("build nerve takes a category")
        C = load_category(rest[0])
        cap = args.dim_cap if args.dim_cap is not None else (None if C.is_acyclic() else NERVE_CAP)
        X = nerve_category(C, cap)
    elif what == "product":
        if len(rest) != 2:
            raise InputError("build product takes two simplicial sets")
        X = Product(load_sset(rest[0]), load_sset(rest[1]), args.dim_cap).sset
    elif what == "pushout":
        if len(rest) != 2:
            raise InputError("build pushout takes two simplicial sets glued along --sub")
        B, C = load_sset(rest[0]), load_sset(rest[1])
        A, inc_b = subcomplex(B, _ids(args.sub))
        A2, inc_c = subcomplex(C, _ids(args.sub))
        if A.ids() != A2.ids():
            raise InputError("the glued subcomplexes differ")
        g = SMap(A, C, {x: inc_c.assign[x] for x in A.ids()}, check=True)
        X = Pushout(inc_b, g).sset
    elif what == "cylinder":
        if len(rest) != 2:
            raise InputError("build cylinder takes B and D; A is given by --sub")
        B, D = load_sset(rest[0]), load_sset(rest[1])
        _, incl = subcomplex(B, _ids(args.sub))
        X = RelCylinder(incl, D, args.dim_cap).sset
    elif what in ("J", "sigma"):
        if len(rest) != 1:
            raise InputError(f"build {what} takes one simplicial set")
        K = load_sset(rest[0])
        X = (ConeJ(K) if what == "J" else ConeSigma(K)).sset
    else:
        raise InputError(f"unknown construction {what!r}")
    _emit_text(io.serialize(X), args)
    return EXIT_PASS


def _split_product(args) -> tuple[Category, Category, object, SSet, SSet]:
    if len(args.inputs) != 2:
        raise InputError("fibration checks take two categories C and D (the projection N(C×D) -> N(C))")
    C, D = load_category(args.inputs[0]), load_category(args.inputs[1])
    P = product_category(C, D)
    cap = args.dim_cap if args.dim_cap is not None else 3
    NP, NC = nerve_category(P, cap + 1), nerve_category(C, cap + 1)
    return C, P, projection_functor(P, C, D).nerve_map(NP, NC), NP, NC


def cmd_check(args) -> int:
    m = args.dim_cap if args.dim_cap is not None else 3
    if args.d_operad is not None:
        O = operadic_nerve(load_operad(args.inputs[0], args.format, args.arity_cap))
        val = validate_operad(O)
        ok = val["ok"] and is_d_operad(O, args.d_operad)
        return _emit_report({"check": "d-operad", "ok": ok, "d": args.d_operad, "validation": val}, args)
    if args.inner_fib or args.cocart:
        C, P, p, NP, _ = _split_product(args)
        if args.inner_fib:
            ok = is_inner_fibration_up_to(p, m, args.budget)
            return _emit_report({"check": "inner-fibration", "ok": ok, "bound": m}, args)
        if not args.edge or args.edge not in P.morphisms:
            raise InputError("--cocart needs --edge naming a morphism of C×D, e.g. '(f,g)'")
        ok = is_cocartesian_edge(p, P.chain_ref([args.edge]), m, args.budget)
        return _emit_report({"check": "cocartesian-edge", "ok": ok, "edge": args.edge, "bound": m}, args)
    if len(args.inputs) != 1:
        raise InputError("check takes one simplicial set")
    X = load_sset(args.inputs[0], args.format)
    if args.d_category is not None:
        d = args.d_category
        rep = is_d_category(X, d, max(m, d + 2), args.budget)
        return _emit_report({"check": "d-category", "ok": rep.ok, "d": d, "bound": rep.bound, "violation": rep.violation}, args)
    rep = quasicategory_report(X, m, args.budget)
    return _emit_report({"check": "quasicategory", "ok": rep.ok, "bound": rep.bound, "witness": rep.witness}, args)


def cmd_truncate(args) -> int:
    d = _need_d(args)
    if len(args.inputs) != 1:
        raise InputError("truncate takes one input")
    token = args.inputs[0]
    fmt = args.format or (Path(token).suffix.lstrip(".") if Path(token).exists() else None)
    if fmt == "opd" or token in OPERADS:
        O = operadic_nerve(load_operad(token, "opd" if fmt else None, args.arity_cap))
        validate_operad(O)
        H = h_d_operad(O, d).operad
        _emit_text(io.serialize(to_colored(H, name=f"h{d}({O.name})")), args)
        return EXIT_PASS
    X = load_sset(token, args.format)
    T = truncate(X, d, args.dim_cap, args.budget)
    _emit_text(io.serialize(T.sset), args)
    return EXIT_PASS


def _unary(color: str) -> str:
    # accept both a bare color and the object name "(c)"
    return color if color.startswith("(") else obj_name([color])


def cmd_homspace(args) -> int:
    dim = args.dim_cap if args.dim_cap is not None else 3
    if args.mul:
        O = operadic_nerve(load_operad(args.inputs[0], args.format, args.arity_cap))
        colors = [_unary(c) for c in _ids(args.colors)]
        if args.y is None:
            raise InputError("homspace --mul needs --y, the output color")
        y = _unary(args.y)
        ops = multi_mapping_space(O, colors, y)
        return _emit_report({"check": "multi-mapping-space", "ok": True, "inputs": colors, "output": y, "points": ops}, args)
    if len(args.inputs) != 1 or args.x is None or args.y is None:
        raise InputError("homspace takes one simplicial set and --x/--y vertices")
    X = load_sset(args.inputs[0], args.format)
    sp = hom_middle(X, args.x, args.y, dim, args.budget) if args.middle else hom_right(X, args.x, args.y, dim)
    _emit_text(io.serialize(sp.sset), args)
    return EXIT_PASS


def _suite_report(names: list[str]) -> dict:
    suites = [run_suite(n) for n in names]
    return {"ok": all(s["ok"] for s in suites), "suites": suites}


def cmd_verify(args) -> int:
    if args.iso:
        if len(args.inputs) != 2:
            raise InputError("verify --iso takes two inputs")
        a, b = args.inputs
        if all(t.endswith(".opd") or t in OPERADS for t in (a, b)):
            A = operadic_nerve(load_operad(a, None, args.arity_cap))
            B = operadic_nerve(load_operad(b, None, args.arity_cap))
            found = iso_over_fin(A, B)
            return _emit_report({"check": "iso-over-fin", "ok": found is not None, "objects": found[0] if found else None}, args)
        f = iso_check(load_sset(a), load_sset(b), args.dim_cap, args.budget)
        return _emit_report({"check": "iso", "ok": f is not None}, args)
    if args.alpha and args.inputs:
        d = _need_d(args)
        C = load_sset(args.inputs[0], args.format)
        pairs = [(args.x, args.y)] if args.x is not None else [(x, y) for x in C.nondegenerate(0) for y in C.nondegenerate(0)]
        dims = args.dim_cap if args.dim_cap is not None else 3
        reps = [alpha_verify(C, x, y, d, dims, args.budget) for x, y in pairs]
        if len(reps) == 1:
            return _emit_report(reps[0], args)
        return _emit_report({"check": "alpha", "ok": all(r["ok"] for r in reps), "results": reps}, args)
    if args.homrel_equivalences and args.inputs:
        C = load_sset(args.inputs[0], args.format)
        reps = [homrel_quadruple_verify(C, x, y, 3, args.budget) for x in C.nondegenerate(0) for y in C.nondegenerate(0)]
        reps += [equivalence_relation_verify(standard(1), ids, C, args.budget) for ids in ([], ["0", "1"])]
        return _emit_report({"check": "homrel-equivalences", "ok": all(r["ok"] for r in reps), "results": reps}, args)
    if args.universal_property and args.inputs:
        if len(args.inputs) != 2:
            raise InputError("verify --universal-property takes C and D")
        rep = universal_property_verify(load_sset(args.inputs[0]), load_sset(args.inputs[1]), _need_d(args), budget=args.budget)
        return _emit_report(rep, args)
    chosen = [n for n in SUITES if getattr(args, n.replace("-", "_"), False)]
    if args.all or not chosen:
        chosen = list(SUITES)
    return _emit_report(_suite_report(chosen), args)


def cmd_report(args) -> int:
    if args.inputs:
        reps = []
        for path in args.inputs:
            try:
                reps.append(json.loads(Path(path).read_text(encoding="utf-8")))
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError(f"cannot read report {path}: {exc}") from None
        return _emit_report(aggregate(reps), args)
    suites = [run_suite(n) for n in SUITES]
    return _emit_report(aggregate(suites) | {"suites": suites}, args)


# -- parser ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, help="truncation level")
    common.add_argument("--dim-cap", type=int, help="highest dimension materialised or certified")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--arity-cap", type=int, help="largest arity of Fin_* used for operads")
    common.add_argument("--format", choices=io.FORMATS, help="input format when the suffix does not tell")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="dtrunc", description="d-homotopy categories and d-operads at desk scale")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="emit a named construction")
    p.add_argument("what", choices=["delta", "boundary", "horn", "nerve", "product", "pushout", "cylinder", "J", "sigma", "category", "operad"])
    p.add_argument("args", nargs="*")
    p.add_argument("--sub", help="comma-separated simplex ids generating the subcomplex A")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", parents=[common], help="run a predicate")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--quasicat", action="store_true")
    g.add_argument("--d-category", type=int, metavar="D")
    g.add_argument("--inner-fib", action="store_true")
    g.add_argument("--cocart", action="store_true")
    g.add_argument("--d-operad", type=int, metavar="D")
    p.add_argument("--edge", help="morphism of C×D for --cocart")
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("truncate", parents=[common], help="h_d of a simplicial set or an operad")
    p.add_argument("inputs", nargs=1)
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("homspace", parents=[common], help="mapping spaces")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--right", action="store_true")
    g.add_argument("--middle", action="store_true")
    g.add_argument("--mul", action="store_true", help="multi-mapping space of an operad")
    p.add_argument("--x", help="source vertex")
    p.add_argument("--y", help="target vertex or output color")
    p.add_argument("--colors", help="comma-separated input colors for --mul")
    p.add_argument("inputs", nargs=1)
    p.set_defaults(func=cmd_homspace)

    p = sub.add_parser("verify", parents=[common], help="verification suites")
    for name in SUITES:
        p.add_argument(f"--{name}", action="store_true")
    p.add_argument("--all", action="store_true")
    p.add_argument("--iso", action="store_true", help="compare two inputs up to isomorphism")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("inputs", nargs="*")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", parents=[common], help="aggregate reports, or run every suite")
    p.add_argument("inputs", nargs="*")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_INPUT
    for flag in ("dim_cap", "arity_cap"):
        v = getattr(args, flag)
        if v is not None and v < 0:
            print(f"dtrunc: --{flag.replace('_', '-')} must be >= 0", file=sys.stderr)
            return EXIT_INPUT
    if args.budget <= 0:
        print("dtrunc: --budget must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (NotCertified, BudgetExceeded) as exc:
        rep = {"ok": False, "inconclusive": True, "reason": str(exc)}
        if isinstance(exc, NotCertified):
            rep["witness"] = exc.witness
        _emit_report(rep, args)
        return EXIT_INCONCLUSIVE
    except DtruncError as exc:
        where = getattr(exc, "where", None)
        msg = str(exc)
        print(f"dtrunc: input error: {msg}" + (f" (at {where})" if where and where not in msg else ""), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
