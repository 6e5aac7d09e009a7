from dtrunc.category import cyclic_group, iso_groupoid, poset_category
from dtrunc.constructions import standard, subcomplex
from dtrunc.verify import (
    alpha_verify,
    cocartesian_image_verify,
    cylinder_lemma_verify,
    equivalence_relation_verify,
    homrel_quadruple_verify,
    universal_property_verify,
)


def test_alpha_on_bz2_is_two_points(bz2):
    rep = alpha_verify(bz2, "*", "*", 1, 3)
    assert rep["ok"]
    assert rep["left"] == rep["right"] == [2, 0, 0, 0]
    rep0 = alpha_verify(bz2, "*", "*", 0, 2)
    assert rep0["ok"]


def test_alpha_on_delta2(delta2):
    for x in delta2.nondegenerate(0):
        for y in delta2.nondegenerate(0):
            assert alpha_verify(delta2, x, y, 1, 2)["ok"]


def test_cylinder_lemma_single_case():
    D1 = standard(1)
    _, incl = subcomplex(D1, ["0", "1"])
    assert cylinder_lemma_verify(incl, D1)["ok"]


def test_quadruple_and_equivalence(iso_nerve):
    assert homrel_quadruple_verify(iso_nerve, "a", "b", 2)["ok"]
    rep = equivalence_relation_verify(standard(1), [], iso_nerve)
    assert rep["ok"] and rep["maps"] == len(iso_groupoid().morphisms)


def test_universal_property_rejects_non_d_category_targets(bz2):
    rep = universal_property_verify(standard(1), bz2, 0)
    assert not rep["ok"] and rep["reason"] == "target is not a d-category"
    assert universal_property_verify(standard(1), standard(1), 0)["ok"]


def test_cocartesian_edges_and_negative_control():
    I = poset_category(["0", "1"], lambda a, b: a <= b, name="[1]")
    pos = cocartesian_image_verify(I, iso_groupoid())
    assert pos["ok"] and not pos["negatives"]
    neg = cocartesian_image_verify(I, I)
    assert neg["ok"]
    assert {r["edge"] for r in neg["edges"] if not r["before"]} == set(neg["negatives"]) != set()
    assert cocartesian_image_verify(cyclic_group(2), I)["ok"]
