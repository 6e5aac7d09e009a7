import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtrunc import io
from dtrunc.category import cyclic_group, iso_groupoid, nerve_category
from dtrunc.constructions import ConeJ, ConeSigma, Product, boundary, horn, standard
from dtrunc.operad import ass, comm, idem, iso_over_fin, operadic_nerve, triv
from dtrunc.report import square_poset

SSETS = [
    lambda: standard(3),
    lambda: boundary(3),
    lambda: horn(3, 1),
    lambda: Product(standard(1), standard(2)).sset,
    lambda: ConeJ(standard(1)).sset,
    lambda: ConeSigma(standard(1)).sset,
    lambda: nerve_category(cyclic_group(2), 4),
    lambda: nerve_category(square_poset()),
]


@given(st.sampled_from(SSETS))
def test_ssx_roundtrip_is_identity(make):
    X = make()
    text = io.serialize(X)
    Y = io.sset_from_json(json.loads(text))
    assert io.serialize(Y) == text
    assert Y.counts() == X.counts()
    assert all(Y.faces_of(x) == X.faces_of(x) for x in X.ids())


@pytest.mark.parametrize("make", [comm, ass, triv, idem])
def test_opd_roundtrip_is_identity(make):
    O = make(3)
    text = io.serialize(O)
    P = io.operad_from_json(json.loads(text))
    assert io.serialize(P) == text
    assert iso_over_fin(operadic_nerve(P), operadic_nerve(O)) is not None


@pytest.mark.parametrize("make", [iso_groupoid, square_poset, lambda: cyclic_group(3)])
def test_cat_roundtrip_is_identity(make):
    C = make()
    text = io.serialize(C)
    assert io.serialize(io.category_from_json(json.loads(text))) == text


def test_files(tmp_path):
    p = tmp_path / "x.ssx"
    io.write(standard(2), p)
    assert io.read(p).counts() == [3, 3, 1]
    with pytest.raises(Exception):
        io.read(tmp_path / "x.txt")


@pytest.mark.parametrize(
    "doc,where",
    [
        ({"dims": {"0": ["a"], "1": ["e"]}, "faces": {"e": [{"degens": [], "base": "a"}]}}, "$.faces.e"),
        ({"dims": {"0": ["a"], "1": ["e"]}, "faces": {"e": [{"degens": [], "base": "a"}, {"degens": [], "base": "zz"}]}}, "$.faces.e[1]"),
        ({"dims": {"x": ["a"]}, "faces": {}}, "$.dims.x"),
        ({"dims": {}, "faces": {}, "extra": 1}, "$"),
        ({"faces": {}}, "$"),
    ],
)
def test_ssx_parse_errors_carry_locations(doc, where):
    with pytest.raises(io.ParseError) as exc:
        io.sset_from_json(doc)
    assert exc.value.where == where


def test_simplicial_identity_violation_is_reported():
    doc = {
        "dims": {"0": ["x", "y", "z"], "1": ["a", "b"], "2": ["t"]},
        "faces": {
            "a": [{"degens": [], "base": "y"}, {"degens": [], "base": "x"}],
            "b": [{"degens": [], "base": "z"}, {"degens": [], "base": "y"}],
            "t": [{"degens": [], "base": "b"}, {"degens": [], "base": "a"}, {"degens": [], "base": "a"}],
        },
    }
    with pytest.raises(io.ParseError):
        io.sset_from_json(doc)


def test_bad_json_reports_line():
    with pytest.raises(io.ParseError) as exc:
        io._load("{\n  nope", "SSX")
    assert exc.value.where.startswith("line 2")
