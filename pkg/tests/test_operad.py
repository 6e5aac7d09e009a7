from itertools import product as iproduct
from math import factorial, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtrunc.errors import ArgumentError, ValidationError
from dtrunc.operad import (
    ColoredOperad,
    FinStar,
    algebras,
    ass,
    check_operad_map,
    classify,
    comm,
    empty_operad,
    fin_id,
    fin_operad,
    h_d_operad,
    idem,
    inert_lifts,
    is_cocartesian,
    is_d_operad,
    iso_over_fin,
    multi_mapping_space,
    operadic_nerve,
    to_colored,
    triv,
    validate_operad,
)

X = "(X)"


def pointed_maps(N):
    for n in range(N + 1):
        for m in range(N + 1):
            for imgs in iproduct(range(m + 1), repeat=n):
                yield n, m, imgs


def test_finstar_counts_and_laws():
    F = FinStar(2)
    assert len(F.morphisms) == sum((m + 1) ** n for n in range(3) for m in range(3))
    F.validate()
    assert F.comp(F.rho(2, 1), fin_id(2, 2, [2, 1])) == F.rho(2, 2)


def test_classify():
    assert classify(fin_id(2, 1, [1, 0])) == "inert"
    assert classify(fin_id(2, 1, [1, 1])) == "active"
    assert classify(fin_id(2, 2, [2, 1])) == "both"
    assert classify(fin_id(2, 1, [0, 0])) == "neither"


@pytest.mark.parametrize(
    "make,weight",
    [
        (ass, lambda sizes: prod(factorial(s) for s in sizes)),
        (comm, lambda sizes: 1),
        (triv, lambda sizes: int(all(s == 1 for s in sizes))),
    ],
)
def test_operadic_nerve_morphism_count_oracle(make, weight):
    N = 3
    O = operadic_nerve(make(N))
    expected = sum(weight([imgs.count(j) for j in range(1, m + 1)]) for n, m, imgs in pointed_maps(N))
    assert len(O.total.morphisms) == expected


def test_operadic_nerve_is_a_category():
    operadic_nerve(ass(2)).total.validate()
    operadic_nerve(comm(3)).total.validate()


@pytest.mark.parametrize("n", range(4))
def test_multi_mapping_space_sizes(n):
    A, C, T = (operadic_nerve(f(3)) for f in (ass, comm, triv))
    assert len(multi_mapping_space(A, [X] * n, X)) == factorial(n)
    assert len(multi_mapping_space(C, [X] * n, X)) == 1
    assert len(multi_mapping_space(T, [X] * n, X)) == int(n == 1)
    with pytest.raises(ArgumentError):
        multi_mapping_space(A, [X] * 4, X)


def test_validation_and_flags():
    for f in (comm, ass, triv, idem):
        assert validate_operad(operadic_nerve(f(2)))["ok"]
    C, A, T = (operadic_nerve(f(3)) for f in (comm, ass, triv))
    assert is_d_operad(C, 0) and is_d_operad(C, -1)
    assert is_d_operad(A, 1) and not is_d_operad(A, 0)
    assert is_d_operad(T, 0) and not is_d_operad(T, -1)
    assert is_d_operad(empty_operad(2), -1) and is_d_operad(fin_operad(2), -1)


def test_broken_tables_are_rejected():
    good = ass(2)
    sym = dict(good.sym)
    sym[("a01", (1, 0))] = "a01"
    with pytest.raises(ValidationError):
        ColoredOperad(good.colors, good.ops, good.table, sym, arity_cap=2)
    table = dict(good.table)
    table[("a01", 0, "a0")] = "a10"
    with pytest.raises(ValidationError):
        ColoredOperad(good.colors, good.ops, table, good.sym, arity_cap=2)
    with pytest.raises(ValidationError):
        ColoredOperad(["X"], {"u": (("X",), "X")}, {}, {}, arity_cap=1)


@given(st.permutations(range(3)), st.permutations(range(3)))
def test_ass_action_is_a_right_action(p, q):
    A = ass(3)
    composite = tuple(p[t] for t in q)
    assert A.act(A.act("a012", p), q) == A.act("a012", composite)


def test_h0_ass_is_comm_and_reconstruction():
    A, C = operadic_nerve(ass(3)), operadic_nerve(comm(3))
    H = h_d_operad(A, 0).operad
    assert iso_over_fin(H, C) is not None
    assert iso_over_fin(A, C) is None
    back = operadic_nerve(to_colored(A))
    assert iso_over_fin(back, A) is not None
    assert iso_over_fin(operadic_nerve(to_colored(H)), C) is not None


def test_h_minus_one_is_fin_star():
    T = operadic_nerve(triv(2))
    H = h_d_operad(T, -1).operad
    assert iso_over_fin(H, operadic_nerve(comm(2))) is not None


def test_inert_lifts_are_cocartesian_and_negative_control():
    I = operadic_nerve(idem(2))
    lifts = inert_lifts(I)
    assert all(is_cocartesian(I, a) for a in lifts.values())
    lift = lifts[("(X,X)", I.fin.rho(2, 1))]
    parallel = lift.replace("[1]", "[e]")
    assert I.total.morphisms[parallel] == I.total.morphisms[lift]
    assert not is_cocartesian(I, parallel)
    mor = {a: a for a in I.total.morphisms}
    assert check_operad_map(I, I, {x: x for x in I.total.objects}, mor)["ok"]
    mor[lift] = parallel
    assert not check_operad_map(I, I, {x: x for x in I.total.objects}, mor)["ok"]


def test_algebra_counts():
    A, C, T = (operadic_nerve(f(2)) for f in (ass, comm, triv))
    assert len(algebras(T, C)) == 1
    assert len(algebras(C, C)) == 1
    # an operad map Ass -> Ass is fixed by the image of the binary product: x0 x1 or x1 x0
    assert len(algebras(A, A)) == 2
    assert len(algebras(A, T)) == 0
