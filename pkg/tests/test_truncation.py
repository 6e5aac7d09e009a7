from itertools import product as iproduct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtrunc.category import cyclic_group, iso_groupoid, nerve_category, poset_category
from dtrunc.constructions import empty, horn, point, standard
from dtrunc.errors import ArgumentError, NotCertified
from dtrunc.sset import identity_map
from dtrunc.truncation import (
    TruncatedSSet,
    h_low,
    h_map,
    hom_middle,
    hom_right,
    is_d_category,
    phi,
    truncate,
)


def test_d_category_examples(bz2, iso_nerve, square_nerve):
    assert is_d_category(square_nerve, 0, 3).ok
    assert is_d_category(standard(2), 0, 3).ok
    rep = is_d_category(bz2, 0, 3)
    assert not rep.ok and rep.violation["condition"] == 2 and rep.violation["dimension"] == 1
    assert not is_d_category(iso_nerve, 0, 3).ok
    assert is_d_category(bz2, 1, 3).ok and is_d_category(iso_nerve, 1, 3).ok
    assert is_d_category(point(), -1, 2).ok and is_d_category(empty(), -1, 2).ok
    assert not is_d_category(standard(1), -1, 2).ok
    with pytest.raises(NotCertified):
        is_d_category(horn(2, 1), 0, 2)


def test_low_truncations(bz2, iso_nerve):
    assert h_low(bz2, 0).sset.counts() == [1]
    assert h_low(iso_nerve, 0).sset.counts() == [1]
    assert h_low(standard(2), -1).sset.counts() == [1]
    assert h_low(empty(), -1).sset.is_empty()
    assert h_low(empty(), -2).sset.counts() == [1]
    with pytest.raises(ArgumentError):
        h_low(bz2, 1)


def test_h1_of_a_nerve_is_the_nerve(bz2):
    T = truncate(nerve_category(cyclic_group(2), 4), 1, 4)
    assert T.sset.counts() == [1, 1, 1, 1, 1]
    assert T.theta.is_isomorphism()


def test_h2_of_delta2_and_levels():
    T = truncate(standard(2), 2, 2)
    assert T.sset.counts() == [3, 3, 1]
    assert T.theta.is_isomorphism()
    with pytest.raises(ArgumentError):
        TruncatedSSet(standard(2), 0)


def test_h1_collapses_homotopic_edges():
    # Δ^1 × Δ^1 glued along nothing is a poset; Λ^2_1-free example: the square with both diagonals
    sq = poset_category(["00", "01", "10", "11"], lambda a, b: a[0] <= b[0] and a[1] <= b[1])
    N = nerve_category(sq)
    T = truncate(N, 1, 2)
    assert T.sset.counts() == N.counts()[:3]


def preorder_category(n, rel):
    names = [str(i) for i in range(n)]
    return poset_category(names, lambda a, b: a == b or (int(a), int(b)) in rel)


@given(st.integers(2, 4), st.data())
def test_h0_of_a_preorder_is_the_quotient_poset(n, data):
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    rel = set(data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=5)))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in list(iproduct(rel, rel)):
            if b == c and a != d and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    C = preorder_category(n, rel)
    N = nerve_category(C, 3)
    T = h_low(N, 0)
    le = lambda a, b: a == b or (a, b) in rel
    classes = {frozenset(j for j in range(n) if le(i, j) and le(j, i)) for i in range(n)}
    strict = {(a, b) for a in classes for b in classes if a != b and le(min(a), min(b))}
    assert T.sset.counts()[0] == len(classes)
    assert len(T.sset.nondegenerate(1)) == len(strict)
    T.theta.validate()


def test_hom_right_of_nerves_is_the_hom_set(bz2, iso_nerve):
    C = cyclic_group(2)
    R = hom_right(bz2, "*", "*", 2)
    assert R.sset.counts() == [len(C.hom("*", "*"))]
    I = iso_groupoid()
    for x in I.objects:
        for y in I.objects:
            assert hom_right(iso_nerve, x, y, 2).sset.counts() == [len(I.hom(x, y))]
    assert hom_right(standard(1), "1", "0", 2).sset.is_empty()


def test_phi_is_a_monomorphism(bz2):
    R = hom_right(bz2, "*", "*", 2)
    M = hom_middle(bz2, "*", "*", 2)
    assert M.sset.counts()[0] == 2
    f = phi(R, M)
    f.validate()
    assert f.is_injective()


def test_h_map_of_identity_is_identity(square_nerve):
    T = truncate(square_nerve, 0)
    ident = h_map(identity_map(square_nerve), T, T)
    assert ident.is_isomorphism()
    assert all(ident.assign[x] == T.sset.ref(x) for x in T.sset.ids())
    T1 = truncate(square_nerve, 1, 2)
    assert h_map(identity_map(square_nerve), T1, T1).is_isomorphism()
