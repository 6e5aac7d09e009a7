from itertools import product as iproduct
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtrunc.constructions import boundary, horn, standard
from dtrunc.errors import ValidationError
from dtrunc.sset import (
    SSet,
    SimplexRef,
    coface,
    compose_surj,
    monotone_maps,
    surjections,
)


def brute_monotone(m, n):
    return [f for f in iproduct(range(n + 1), repeat=m + 1) if all(a <= b for a, b in zip(f, f[1:]))]


@pytest.mark.parametrize("m,n", [(0, 0), (1, 2), (2, 2), (3, 1), (2, 4)])
def test_monotone_maps_match_brute_force(m, n):
    assert list(monotone_maps(m, n)) == sorted(brute_monotone(m, n))


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (4, 2), (3, 3)])
def test_surjection_count_is_binomial(n, k):
    assert len(list(surjections(n, k))) == comb(n, k)


def test_cosimplicial_identities():
    for n in range(1, 5):
        for j in range(n + 1):
            for i in range(j):
                # d^j d^i = d^i d^{j-1}
                assert compose_surj(coface(n, j), coface(n - 1, i)) == compose_surj(coface(n, i), coface(n - 1, j - 1))


@pytest.mark.parametrize("n", range(5))
def test_standard_simplex_counts(n):
    D = standard(n)
    D.validate()
    assert D.counts() == [comb(n + 1, k + 1) for k in range(n + 1)]


@pytest.mark.parametrize("n", range(5))
def test_all_simplices_count_oracle(n):
    # n-simplices of Δ^2 are monotone maps [n] -> [2]
    D = standard(2)
    assert len(D.all_simplices(n)) == len(brute_monotone(n, 2))


def test_boundary_and_horn():
    assert boundary(2).counts() == [3, 3]
    assert horn(2, 1).counts() == [3, 2]
    assert horn(3, 0).counts() == [4, 6, 3]
    boundary(3).validate()


def test_ez_normal_form_roundtrip():
    r = SimplexRef.from_degeneracies("01", 1, [2, 0])
    assert r.degeneracies == (2, 0)
    assert r.dim == 3
    with pytest.raises(ValidationError):
        SimplexRef.from_degeneracies("01", 1, [0, 2])


def test_degenerate_faces_normalise():
    D = standard(1)
    s = D.degen(D.ref("01"), 0)
    assert s.surj == (0, 0, 1)
    assert D.face(s, 0) == D.ref("01")
    assert D.face(s, 1) == D.ref("01")
    assert D.face(s, 2) == D.constant("0", 1)


def test_validate_rejects_bad_identity():
    faces = {"a": [SimplexRef("y", (0,)), SimplexRef("x", (0,))], "b": [SimplexRef("z", (0,)), SimplexRef("y", (0,))]}
    faces["t"] = [SimplexRef("b", (0, 1)), SimplexRef("a", (0, 1)), SimplexRef("a", (0, 1))]
    X = SSet({0: ["x", "y", "z"], 1: ["a", "b"], 2: ["t"]}, faces)
    with pytest.raises(ValidationError):
        X.validate()


@given(st.integers(0, 3), st.data())
def test_apply_is_functorial(n, data):
    D = standard(3)
    r = data.draw(st.sampled_from(D.all_simplices(n)))
    m = data.draw(st.integers(0, 3))
    theta = data.draw(st.sampled_from(list(monotone_maps(m, n))))
    k = data.draw(st.integers(0, 3))
    phi = data.draw(st.sampled_from(list(monotone_maps(k, m))))
    assert D.apply(D.apply(r, theta), phi) == D.apply(r, compose_surj(theta, phi))


@given(st.integers(1, 4), st.data())
def test_face_degeneracy_identities(n, data):
    D = standard(3)
    r = data.draw(st.sampled_from(D.all_simplices(n)))
    j = data.draw(st.integers(0, n))
    # d_j s_j = d_{j+1} s_j = id
    s = D.degen(r, j)
    assert D.face(s, j) == r and D.face(s, j + 1) == r


@given(st.integers(0, 3), st.data())
def test_simplices_of_delta_are_monotone_maps(n, data):
    # EZ uniqueness: vertex sequences determine simplices of Δ^3 bijectively
    D = standard(3)
    seen = {D.vertices_of(r) for r in D.all_simplices(n)}
    assert len(seen) == len(D.all_simplices(n)) == len(brute_monotone(n, 3))
