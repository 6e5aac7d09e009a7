from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtrunc.category import (
    Category,
    Functor,
    chain_of,
    cyclic_group,
    discrete_category,
    iso_groupoid,
    nerve_category,
    poset_category,
    product_category,
    projection_functor,
)
from dtrunc.errors import ValidationError


@given(st.integers(1, 4), st.integers(1, 3))
def test_cyclic_group_nerve_counts(order, cap):
    # nondegenerate k-simplices are chains of k non-identity elements
    N = nerve_category(cyclic_group(order), cap)
    N.validate()
    assert N.counts() == [(order - 1) ** k for k in range(cap + 1)][: len(N.counts())]


def test_iso_groupoid_nerve(iso_nerve):
    iso_nerve.validate()
    # non-identity arrows alternate f, g, so two chains per positive length
    assert iso_nerve.counts() == [2, 2, 2, 2, 2, 2]


def test_poset_nerve_counts_chains(square, square_nerve):
    els = square.objects
    strict = lambda a, b: a != b and a[0] <= b[0] and a[1] <= b[1]
    for k in range(4):
        chains = [c for c in combinations(sorted(els), k + 1) if all(strict(a, b) for a, b in zip(c, c[1:]))]
        assert len(square_nerve.nondegenerate(k)) == len(chains)
    assert square_nerve._cert["nerve_exact"] == float("inf")


def test_chain_roundtrip(square, square_nerve):
    for r in square_nerve.all_simplices(3):
        ch = chain_of(square_nerve, r)
        start = square_nerve.vertices_of(r)[0]
        assert square.chain_ref(ch, start) == r


def test_validate_catches_broken_associativity():
    mor = {"1": ("x", "x"), "a": ("x", "x"), "b": ("x", "x")}
    table = {("1", m): m for m in mor} | {(m, "1"): m for m in mor}
    table |= {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"}
    with pytest.raises(ValidationError):
        Category(["x"], mor, {"x": "1"}, table)


def test_functors_and_products():
    I = iso_groupoid()
    B = cyclic_group(2)
    P = product_category(I, B)
    assert len(P.morphisms) == 8
    pr = projection_functor(P, I, B)
    assert not pr.is_faithful()
    ident = Functor(I, I, {x: x for x in I.objects}, {m: m for m in I.morphisms})
    assert ident.compose(ident).mor == ident.mor
    with pytest.raises(ValidationError):
        Functor(I, I, {"a": "a", "b": "a"}, {m: m for m in I.morphisms})
    collapse = Functor(I, I, {"a": "a", "b": "a"}, {m: "1a" for m in I.morphisms})
    assert collapse.obj == {"a": "a", "b": "a"}
    N_P, N_I = nerve_category(P, 3), nerve_category(I, 3)
    pr.nerve_map(N_P, N_I).validate()


def test_isomorphism_queries():
    I = iso_groupoid()
    assert I.isomorphic("a", "b") and not I.is_skeletal()
    D = discrete_category(["p", "q"])
    assert D.is_skeletal() and D.is_acyclic()
    assert not cyclic_group(2).is_acyclic()


def test_name_clash_rejected():
    C = poset_category(["a", "b"], lambda x, y: x <= y)
    C.morphisms["a"] = ("a", "a")
    with pytest.raises(ValidationError):
        nerve_category(C)
