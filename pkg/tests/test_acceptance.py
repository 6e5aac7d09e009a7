"""One test per acceptance criterion; each prints a PASS/FAIL line (collected in the terminal summary)."""

import json
import time
from functools import lru_cache
from math import comb

from conftest import ACCEPTANCE_LINES

from dtrunc import io
from dtrunc.cli import main
from dtrunc.constructions import ConeJ, ConeSigma, Product, RelCylinder, boundary, horn, quotient, standard, subcomplex
from dtrunc.operad import ass, comm, idem, triv
from dtrunc.report import run_suite


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@lru_cache(maxsize=None)
def suite(name: str) -> dict:
    return run_suite(name)


def _summary(rep: dict) -> str:
    return f"{rep['checks'] - len(rep['failed'])}/{rep['checks']} checks"


def _kernel_corpus():
    base = [standard(n) for n in range(5)]
    base += [boundary(n) for n in range(1, 5)]
    base += [horn(n, i) for n in range(2, 5) for i in range(n + 1)]
    small = [standard(1), standard(2), standard(3), boundary(2), boundary(3), horn(2, 1), horn(3, 1)]
    prods = [Product(a, b, 4).sset for i, a in enumerate(small) for b in small[i:]]
    quots = [ConeJ(K).sset for K in (standard(1), standard(2), boundary(2))]
    quots += [ConeSigma(K).sset for K in (standard(1), standard(2), boundary(2))]
    quots.append(quotient(standard(1), ["0", "1"]).sset)
    for B, ids in ((standard(1), ["0", "1"]), (standard(2), ["01", "12"]), (standard(1), [])):
        _, incl = subcomplex(B, ids)
        quots += [RelCylinder(incl, D).sset for D in (standard(0), boundary(1), standard(1))]
    return base + prods + quots


def test_criterion_1_kernel_laws():
    start = time.perf_counter()
    corpus = _kernel_corpus()
    bad = []
    for X in corpus:
        try:
            X.validate()
        except Exception as exc:  # any violation is a failure of the criterion
            bad.append((X.name, str(exc)))
            continue
        for n in range(min(X.dim + 1, 5) + 1):
            every = X.all_simplices(n)
            # EZ: each n-simplex is uniquely s(x) with x nondegenerate, so counts are binomial sums
            expected = sum(len(X.nondegenerate(k)) * comb(n, k) for k in range(n + 1))
            if len(set(every)) != len(every) or len(every) != expected:
                bad.append((X.name, f"EZ count in degree {n}"))
            for r in every:
                if any(f.surj[-1] != X.dim_of(f.base) for f in X.faces(r)):
                    bad.append((X.name, f"face of {r} not in normal form"))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    record(1, ok, f"{len(corpus)} complexes, {elapsed:.1f}s")
    assert not bad, bad[:3]
    assert elapsed < 60


def test_criterion_2_cylinder_lemma():
    rep = suite("cylinder-lemma")
    record(2, rep["ok"] and rep["checks"] == 9, _summary(rep))
    assert rep["ok"] and rep["checks"] == 9


def test_criterion_3_homotopy_rel_a():
    rep = suite("homrel-equivalences")
    quad = [r for r in rep["results"] if r["check"] == "homrel-equivalences"]
    equiv = [r for r in rep["results"] if r["check"] == "homrel-equivalence-relation"]
    ok = rep["ok"] and len(equiv) == 6 and quad
    record(3, ok, f"{len(quad)} quadruple comparisons, {len(equiv)} equivalence-relation checks")
    assert ok, rep["failed"]


def test_criterion_4_mapping_spaces():
    rep = suite("alpha")
    bz2 = [r for r in rep["results"] if r["C"] == "N(BZ/2)" and r["d"] == 1]
    two_points = bool(bz2) and all(r["left"] == r["right"] == [2, 0, 0, 0] for r in bz2)
    ok = rep["ok"] and two_points
    record(4, ok, f"{_summary(rep)}; N(BZ/2), d=1 both sides 2-point discrete: {two_points}")
    assert ok, rep["failed"]


def test_criterion_5_universal_property():
    rep = suite("universal-property")
    iff = [r for r in rep["results"] if r["check"] == "theta-iso-iff-d-category"]
    negative_seen = any(not r["d_category"] for r in iff)
    ok = rep["ok"] and negative_seen
    record(5, ok, f"{_summary(rep)}, including N(BZ/2) at d=0 as the negative case")
    assert ok, rep["failed"]


def test_criterion_6_functor_laws():
    rep = suite("functor-laws")
    record(6, rep["ok"], _summary(rep))
    assert rep["ok"], rep["failed"]


def test_criterion_7_cocartesian_edges():
    rep = suite("cocart")
    negatives = sum(len(r["negatives"]) for r in rep["results"])
    ok = rep["ok"] and negatives > 0
    record(7, ok, f"{_summary(rep)}, {negatives} negative-control edges rejected")
    assert ok, rep["failed"]


def test_criterion_8_operads():
    rep = suite("operad-suite")
    names = {r["check"] for r in rep["results"]}
    needed = {"d-operad-flags", "triv-binary-mul-empty", "h0-ass-is-comm", "theta-preserves-inerts", "h_d-revalidates", "mul_truncation"}
    ok = rep["ok"] and needed <= names
    record(8, ok, _summary(rep))
    assert ok, rep["failed"]


def test_criterion_9_algebras():
    rep = suite("alg-d-category")
    record(9, rep["ok"], _summary(rep))
    assert rep["ok"], rep["failed"]


def test_criterion_10_cli_determinism(tmp_path):
    start = time.perf_counter()
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    codes = [main(["verify", "--all", "--out", str(p)]) for p in (a, b)]
    identical = a.read_bytes() == b.read_bytes()
    elapsed = time.perf_counter() - start
    roundtrip = True
    for X in _kernel_corpus():
        text = io.serialize(X)
        roundtrip &= io.serialize(io.sset_from_json(json.loads(text))) == text
    for make in (comm, ass, triv, idem):
        text = io.serialize(make(3))
        roundtrip &= io.serialize(io.operad_from_json(json.loads(text))) == text
    ok = codes == [0, 0] and identical and roundtrip and elapsed < 600
    record(10, ok, f"two full verify runs byte-identical={identical}, round-trips={roundtrip}, {elapsed:.0f}s")
    assert codes == [0, 0] and identical and roundtrip
    assert elapsed < 600
