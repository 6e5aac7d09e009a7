from itertools import product as iproduct

import pytest

from dtrunc.category import cyclic_group, iso_groupoid, nerve_category
from dtrunc.constructions import boundary, horn, point, standard, subcomplex
from dtrunc.errors import BudgetExceeded, NotCertified
from dtrunc.solver import (
    ExtensionProblem,
    edge_is_equivalence,
    enumerate_maps,
    extends,
    fun_complex,
    has_rlp,
    homotopy_classes,
    is_homotopic_rel,
    is_kan_up_to,
    is_quasicategory_up_to,
    iso_check,
    pi0,
    require_quasicategory,
    search,
)
from dtrunc.sset import SMap


def brute_maps(K, X):
    """Assign every nondegenerate simplex of K any simplex of X of its dimension, keep compatible ones."""
    ids = K.ids()
    pools = [X.all_simplices(K.dim_of(x)) for x in ids]
    out = []
    for choice in iproduct(*pools):
        a = dict(zip(ids, choice))
        f = SMap(K, X, a)
        if all(X.faces(a[x]) == tuple(f(r) for r in K.faces_of(x)) for x in ids if K.dim_of(x) > 0):
            out.append(f)
    return out


@pytest.mark.parametrize(
    "K,X",
    [
        (standard(1), standard(2)),
        (horn(2, 1), standard(2)),
        (boundary(2), standard(2)),
        (standard(2), horn(2, 0)),
        (boundary(1), standard(1)),
    ],
)
def test_enumerate_maps_matches_brute_force(K, X):
    assert sorted(f.key() for f in enumerate_maps(K, X)) == sorted(f.key() for f in brute_maps(K, X))


def test_enumerate_maps_into_nerve(bz2):
    assert len(enumerate_maps(standard(2), bz2)) == len(brute_maps(standard(2), bz2)) == 4


def test_quasicategory_certificates(bz2, iso_nerve, square_nerve):
    for X in (bz2, iso_nerve, square_nerve, standard(3)):
        assert is_quasicategory_up_to(X, 3)
    assert not is_quasicategory_up_to(horn(2, 1), 2)
    assert not is_quasicategory_up_to(boundary(2), 2)
    assert is_kan_up_to(bz2, 3)
    assert not is_kan_up_to(standard(1), 2)
    with pytest.raises(NotCertified):
        require_quasicategory(horn(2, 1), 2)


def test_budget_is_inconclusive_not_negative(bz2):
    with pytest.raises(BudgetExceeded):
        enumerate_maps(standard(3), bz2, budget=3)


def test_extends_and_rlp():
    D2 = standard(2)
    H, incl = subcomplex(D2, ["01", "12"])
    f = SMap(H, D2, {x: D2.ref(x) for x in H.ids()})
    assert extends(incl, f) is not None
    # no lift of the identity horn into Λ^2_1 over a point
    Lam = horn(2, 1)
    pt = point()
    top = SMap(H, Lam, {x: Lam.ref(x) for x in H.ids()})
    to_pt = lambda K: SMap(K, pt, {x: pt.constant("0", K.dim_of(x)) for x in K.ids()})
    assert not has_rlp(to_pt(Lam), incl, top, to_pt(D2))
    top2 = SMap(H, D2, {x: D2.ref(x) for x in H.ids()})
    assert has_rlp(to_pt(D2), incl, top2, to_pt(D2))


def edge_map(C, N, f, D1):
    return SMap(D1, N, {"0": N.vertex(C.src(f)), "1": N.vertex(C.dst(f)), "01": C.chain_ref([f])})


def oracle_homotopic(C, f, g, rel_boundary):
    """Squares h1 f = g h0 with invertible tracks (identities when the ends are fixed)."""
    if rel_boundary:
        return f == g
    for h0 in C.hom(C.src(f), C.src(g)):
        for h1 in C.hom(C.dst(f), C.dst(g)):
            if C.is_iso(h0) and C.is_iso(h1) and C.comp(h1, f) == C.comp(g, h0):
                return True
    return False


@pytest.mark.parametrize("make", [lambda: cyclic_group(2), iso_groupoid])
def test_homotopy_rel_matches_square_oracle(make, square):
    for C in (make(), square):
        N = nerve_category(C, 4)
        D1 = standard(1)
        for ids in ([], ["0", "1"]):
            _, incl = subcomplex(D1, ids)
            for f in C.morphisms:
                for g in C.morphisms:
                    if ids and (C.src(f), C.dst(f)) != (C.src(g), C.dst(g)):
                        continue
                    got, _ = is_homotopic_rel(edge_map(C, N, f, D1), edge_map(C, N, g, D1), incl)
                    assert got == oracle_homotopic(C, f, g, bool(ids)), (C.name, f, g, ids)


def test_free_homotopy_identifies_e_and_sigma(bz2):
    # b = σ a solves the square, so e and σ are homotopic when the ends may move
    C = cyclic_group(2)
    D1 = standard(1)
    _, incl = subcomplex(D1, [])
    ok, witness = is_homotopic_rel(edge_map(C, bz2, "e", D1), edge_map(C, bz2, "σ", D1), incl)
    assert ok and witness is not None


def test_homotopy_classes_of_edges_in_delta2():
    D1 = standard(1)
    A, a_in = subcomplex(D1, ["0", "1"])
    _, b_in = subcomplex(D1, D1.ids())
    H = homotopy_classes(a_in, b_in, standard(2))
    # Δ^2 has six 1-simplices and no nontrivial 2-cells between them
    assert len(H.classes) == len(standard(2).all_simplices(1)) == 6


def test_equivalence_edges(bz2):
    assert edge_is_equivalence(bz2, bz2.ref("σ"))
    assert not edge_is_equivalence(standard(1), standard(1).ref("01"))


def test_pi0_and_iso_check(bz2, iso_nerve):
    assert pi0(boundary(1)) == [["0"], ["1"]]
    assert pi0(horn(2, 1)) == [["0", "1", "2"]]
    assert iso_check(standard(1), boundary(1)) is None
    f = iso_check(standard(2), standard(2))
    assert f is not None and f.is_isomorphism()
    assert iso_check(bz2, iso_nerve, 3) is None


def test_fun_complex_small_cases():
    D0, D1 = standard(0), standard(1)
    F, _ = fun_complex(D0, standard(2), 2)
    assert F.counts() == standard(2).counts()
    F, table = fun_complex(D1, D1, 2)
    # order-preserving maps [1]x[1] -> [1]: six, three of them degenerate
    assert F.counts()[:2] == [3, 3]
    assert all(isinstance(m, SMap) for m in table.values())


def test_search_respects_partial_assignment():
    D2 = standard(2)
    D1 = standard(1)
    prob = ExtensionProblem(D1, D2, {"0": D2.vertex("1")})
    assert all(f.assign["0"] == D2.vertex("1") for f in search(prob))
    assert len(list(search(prob))) == 2
