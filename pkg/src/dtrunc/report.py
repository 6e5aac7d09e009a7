"""The named corpus and the verification suites behind ``dtrunc verify`` and ``dtrunc report``.

A suite is a list of check reports; ``run_suite`` wraps them with an overall
flag.  Nothing here depends on wall-clock time, so reports are reproducible.
"""

from __future__ import annotations

from typing import Callable

from .category import Category, cyclic_group, iso_groupoid, nerve_category, poset_category
from .constructions import boundary, standard, subcomplex
from .operad import (
    OperadData,
    algebra_category,
    ass,
    check_operad_map,
    comm,
    h_d_operad,
    idem,
    inert_lifts,
    is_d_operad,
    iso_over_fin,
    multi_mapping_space,
    mul_truncation_verify,
    operadic_nerve,
    precompose_algebras,
    triv,
    tuple_objects,
    validate_operad,
)
from .sset import SSet
from .truncation import h_low, is_d_category, truncate
from .verify import (
    alpha_verify,
    cocartesian_image_verify,
    cylinder_lemma_verify,
    equivalence_relation_verify,
    functor_laws_verify,
    homrel_quadruple_verify,
    universal_property_verify,
)

NERVE_CAP = 5


# -- corpus ---------------------------------------------------------------------
def interval() -> Category:
    return poset_category(["0", "1"], lambda a, b: a <= b, name="[1]")


def square_poset() -> Category:
    return poset_category(["00", "01", "10", "11"], lambda a, b: a[0] <= b[0] and a[1] <= b[1], name="2x2")


CATEGORIES: dict[str, Callable[[], Category]] = {
    "bz2": lambda: cyclic_group(2),
    "iso": iso_groupoid,
    "interval": interval,
    "poset22": square_poset,
}


def named_category(name: str) -> Category:
    try:
        return CATEGORIES[name]()
    except KeyError:
        raise KeyError(f"unknown category {name!r}; choose from {sorted(CATEGORIES)}") from None


def named_nerve(name: str, cap: int = NERVE_CAP) -> SSet:
    C = named_category(name)
    return nerve_category(C, None if C.is_acyclic() else cap)


OPERADS = {"comm": comm, "ass": ass, "triv": triv, "idem": idem}


def _check(name: str, ok: bool, **details) -> dict:
    return {"check": name, "ok": bool(ok), **details}


# -- suites ------------------------------------------------------------------------
def suite_cylinder_lemma() -> list[dict]:
    out = []
    pairs = [
        (standard(1), ["0", "1"], "∂Δ1⊆Δ1"),
        (standard(2), ["01", "12"], "Λ2_1⊆Δ2"),
        (standard(1), [], "∅⊆Δ1"),
    ]
    for B, ids, label in pairs:
        _, incl = subcomplex(B, ids)
        for D, dname in ((standard(0), "Δ0"), (boundary(1), "∂Δ1"), (standard(1), "Δ1")):
            out.append(cylinder_lemma_verify(incl, D, label=f"{label}, D={dname}"))
    return out


def suite_alpha(dims: int = 3) -> list[dict]:
    out = []
    for C in (standard(2), named_nerve("bz2"), named_nerve("poset22")):
        for d in (0, 1, 2):
            for X in C.nondegenerate(0):
                for Y in C.nondegenerate(0):
                    out.append(alpha_verify(C, X, Y, d, dims))
    return out


def suite_homrel() -> list[dict]:
    out = []
    for C in (standard(2), named_nerve("bz2"), named_nerve("iso")):
        for X in C.nondegenerate(0):
            for Y in C.nondegenerate(0):
                out.append(homrel_quadruple_verify(C, X, Y))
        for ids in ([], ["0", "1"]):
            out.append(equivalence_relation_verify(standard(1), ids, C))
    return out


def suite_universal_property() -> list[dict]:
    out = []
    # θ_d is an isomorphism exactly on certified d-categories
    cases = [
        (named_nerve("poset22"), 0, True),
        (named_nerve("interval"), 0, True),
        (standard(2), 0, True),
        (named_nerve("bz2"), 1, True),
        (named_nerve("iso"), 1, True),
        (named_nerve("bz2"), 0, False),
        (named_nerve("iso"), 0, False),
    ]
    for C, d, expected in cases:
        cert = is_d_category(C, d, max(2, d + 2)).ok
        iso = truncate(C, d, 3).theta.is_isomorphism()
        out.append(_check("theta-iso-iff-d-category", cert == expected and iso == cert, C=C.name, d=d, d_category=cert, theta_iso=iso))
    targets = [(standard(0), (0, 1, 2)), (standard(1), (0, 1, 2)), (named_nerve("interval"), (0, 1)), (named_nerve("bz2", 4), (1, 2))]
    for C in (standard(1), standard(2)):
        for D, ds in targets:
            for d in ds:
                out.append(universal_property_verify(C, D, d, cap=1))
    return out


def suite_functor_laws() -> list[dict]:
    from .solver import enumerate_maps

    out = []
    D1, D2 = standard(1), standard(2)
    maps = enumerate_maps(D1, D2)
    back = enumerate_maps(D2, D2)
    pairs = [(f, g) for f in maps[:3] for g in back[:3]]
    for d in (0, 1, 2):
        out.append(functor_laws_verify(D1, d, pairs, out_dim=max(3, d + 2)))
    for C in (named_nerve("poset22"), named_nerve("bz2")):
        for d in (0, 1, 2):
            # re-truncating h_d C needs it materialised through the certification bound d + 2
            out.append(functor_laws_verify(C, d, [], out_dim=max(3, d + 2)))
    return out


def suite_cocart() -> list[dict]:
    I = interval()
    out = []
    for C, D in ((I, iso_groupoid()), (cyclic_group(2), iso_groupoid()), (I, I)):
        r = cocartesian_image_verify(C, D, m=3)
        r.pop("edges")
        out.append(r)
    return out


def _operads(N: int) -> dict[str, OperadData]:
    return {name: operadic_nerve(OPERADS[name](N)) for name in ("comm", "ass", "triv")}


def suite_operad(N: int = 3) -> list[dict]:
    out = []
    ops = _operads(N)
    for name, O in ops.items():
        out.append(validate_operad(O) | {"check": f"validate-{name}"})
    flags = {name: {str(d): is_d_operad(O, d) for d in (-1, 0, 1)} for name, O in ops.items()}
    expected = {
        "comm": {"-1": True, "0": True, "1": True},
        "ass": {"-1": False, "0": False, "1": True},
        "triv": {"-1": False, "0": True, "1": True},
    }
    out.append(_check("d-operad-flags", flags == expected, flags=flags))
    X = "(X)"
    out.append(_check("triv-binary-mul-empty", multi_mapping_space(ops["triv"], [X, X], X) == []))
    h0 = h_d_operad(ops["ass"], 0)
    out.append(_check("h0-ass-is-comm", iso_over_fin(h0.operad, ops["comm"]) is not None, arity_cap=N))
    for name, O in ops.items():
        for d in (-1, 0, 1, 2):
            tr = h_d_operad(O, d)
            rep = check_operad_map(O, tr.operad, tr.theta.obj, tr.theta.mor)
            onto = set(tr.theta.obj.values()) == set(tr.operad.total.objects)
            out.append(_check("theta-preserves-inerts", rep["ok"] and onto, operad=name, d=d))
            if d <= 1:
                again = validate_operad(tr.operad)["ok"] and is_d_operad(tr.operad, d)
                out.append(_check("h_d-revalidates", again, operad=name, d=d))
    for name, O in ops.items():
        for d in (-1, 0, 1, 2):
            for n in range(N + 1):
                out.append(mul_truncation_verify(O, d, [X] * n, X))
    # Mul does not depend on the chosen tuple object
    for name, O in ops.items():
        for n in range(N + 1):
            sizes = {len(multi_mapping_space(O, [X] * n, X, t)) for t in tuple_objects(O, [X] * n)}
            out.append(_check("mul-tuple-independent", len(sizes) == 1, operad=name, arity=n))
    # negative control: a non-coCartesian edge parallel to an inert lift
    I = operadic_nerve(idem(2))
    lift = inert_lifts(I)[("(X,X)", I.fin.rho(2, 1))]
    bad = {a: a for a in I.total.morphisms}
    bad[lift] = lift.replace("[1]", "[e]")
    rep = check_operad_map(I, I, {x: x for x in I.total.objects}, bad)
    out.append(_check("negative-control-inert", not rep["ok"], violations=rep["inert_violations"]))
    # h_0 of the total category differs from the total category of h_0
    C2 = operadic_nerve(comm(2))
    low = h_low(nerve_category(C2.total, 2), 0)
    objs = len(h_d_operad(C2, 0).operad.total.objects)
    out.append(_check("h0-total-differs", low.sset.counts()[0] == 1 and objs == 3, h0_total_vertices=low.sset.counts()[0], h0_operad_objects=objs))
    return out


def suite_alg(N: int = 3) -> list[dict]:
    out = []
    ops = _operads(N)
    for src, tgt in (("triv", "comm"), ("comm", "comm")):
        cat = algebra_category(ops[src], ops[tgt])
        rep = is_d_category(cat.nerve(3), 0, 2)
        out.append(_check("alg-d-category", rep.ok, source=src, target=tgt, algebras=len(cat.objects), d=0, bound=2))
    h0 = h_d_operad(ops["ass"], 0)
    for tgt in ("comm", "triv"):
        rep = precompose_algebras(h0.theta, h0.operad, ops["ass"], ops[tgt])
        out.append(_check("alg-precomposition", rep["ok"], target=tgt, left=rep["left"], right=rep["right"]))
    return out


SUITES: dict[str, Callable[[], list[dict]]] = {
    "cylinder-lemma": suite_cylinder_lemma,
    "alpha": suite_alpha,
    "homrel-equivalences": suite_homrel,
    "universal-property": suite_universal_property,
    "functor-laws": suite_functor_laws,
    "cocart": suite_cocart,
    "operad-suite": suite_operad,
    "alg-d-category": suite_alg,
}


def run_suite(name: str) -> dict:
    checks = SUITES[name]()
    failed = [c.get("check") for c in checks if not c.get("ok")]
    return {"suite": name, "ok": not failed, "checks": len(checks), "failed": failed, "results": checks}


def aggregate(reports: list[dict]) -> dict:
    """Summarise suite or check reports into one pass/fail table."""
    rows = []
    # a verify run bundles several suites; list them one by one
    flat = [s for r in reports for s in (r["suites"] if "suites" in r else [r])]
    for r in flat:
        label = r.get("suite") or r.get("check") or "report"
        rows.append({"name": label, "ok": bool(r.get("ok"))})
    return {"ok": all(r["ok"] for r in rows), "passed": sum(r["ok"] for r in rows), "total": len(rows), "rows": rows}
