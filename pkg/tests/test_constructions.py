from itertools import combinations, product as iproduct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtrunc.constructions import (
    ConeJ,
    ConeSigma,
    Product,
    Pushout,
    RelCylinder,
    boundary,
    disjoint_union,
    empty,
    horn,
    poset_nerve,
    quotient,
    skeleton,
    standard,
    subcomplex,
)
from dtrunc.errors import ArgumentError, DomainError
from dtrunc.sset import SMap


def grid_chains(p, q, k):
    """Strict chains of length k + 1 in [p] x [q]: the nondegenerate k-simplices of Δ^p × Δ^q."""
    pts = list(iproduct(range(p + 1), range(q + 1)))
    le = lambda a, b: a[0] <= b[0] and a[1] <= b[1]
    return [c for c in combinations(sorted(pts), k + 1) if all(le(a, b) and a != b for a, b in zip(c, c[1:]))]


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 2), (0, 3)])
def test_product_of_simplices_matches_chain_oracle(p, q):
    P = Product(standard(p), standard(q))
    P.sset.validate()
    assert P.sset.counts() == [len(grid_chains(p, q, k)) for k in range(p + q + 1)]


def test_product_projections_and_pairing():
    P = Product(standard(1), standard(2))
    a, b = standard(1).ref("01"), standard(2).ref("012")
    # a degenerate pairing of a 1-simplex with a 2-simplex
    s = P.pair(standard(1).degen(a, 0), b)
    assert P.pr1(s) == standard(1).degen(a, 0)
    assert P.pr2(s) == b
    assert P.parts(s.base) is not None


def test_product_of_horns_validates():
    P = Product(horn(2, 1), boundary(2), cap=4)
    P.sset.validate()


@given(st.integers(1, 4), st.data())
def test_poset_nerve_counts_chains(n, data):
    # random poset on n elements given by a subset of the total order's relations, closed transitively
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = set(data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else [])
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in list(iproduct(rel, rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    names = [str(i) for i in range(n)]
    N = poset_nerve(names, lambda a, b: a == b or (int(a), int(b)) in rel)
    N.validate()
    for k in range(n):
        chains = [c for c in combinations(range(n), k + 1) if all((a, b) in rel for a, b in zip(c, c[1:]))]
        assert len(N.nondegenerate(k)) == len(chains)


def test_pushout_glues_edges_at_a_vertex():
    D1 = standard(1)
    A, inc0 = subcomplex(D1, ["1"])
    _, inc1 = subcomplex(D1, ["0"])
    g = SMap(A, D1, {"1": D1.vertex("0")})
    P = Pushout(inc0, g)
    P.sset.validate()
    assert P.sset.counts() == [3, 2]


def test_quotient_circle():
    Q = quotient(standard(1), ["0", "1"])
    assert Q.sset.counts() == [1, 1]
    with pytest.raises(DomainError):
        quotient(standard(1), [])


def test_cones():
    assert ConeJ(standard(0)).sset.counts() == [2, 1]
    J = ConeJ(standard(1))
    J.sset.validate()
    assert J.sset.counts() == [2, 2, 1]
    S = ConeSigma(standard(1))
    S.sset.validate()
    # Δ^1 × Δ^1 with both ends collapsed: three edges survive
    assert S.sset.counts() == [2, 3, 2]
    assert len(set(S.marked())) == 2


def test_relative_cylinders():
    D1 = standard(1)
    _, rel_boundary = subcomplex(D1, ["0", "1"])
    _, rel_empty = subcomplex(D1, [])
    assert RelCylinder(rel_boundary, D1).sset.counts() == [2, 3, 2]
    assert RelCylinder(rel_empty, D1).sset.counts() == [4, 5, 2]
    C = RelCylinder(rel_boundary, boundary(1))
    C.sset.validate()
    assert C.sset.counts() == [2, 2]


def test_skeleton_disjoint_union_and_errors():
    sk, _ = skeleton(standard(3), 1)
    assert sk.counts() == [4, 6]
    U, _, _ = disjoint_union(standard(1), standard(2))
    assert U.counts() == [5, 4, 1]
    assert empty().is_empty()
    with pytest.raises(ArgumentError):
        horn(2, 3)
    with pytest.raises(ArgumentError):
        standard(-1)
