from __future__ import annotations

import itertools

import numpy as np
import pytest

from fmb.catalog import build_group, catalog_lookup, catalog_names, resolve_alias
from fmb.errors import BadParams, OrderMismatch, OrderOverflow, ParseError, UnknownLabel
from fmb.pgroup import commutator, direct_product, frattini, group_from_spec, is_powerful, lazard_series, spec_from_text, subgroup_generated


def _axioms(g):
    T = g.cayley
    n = g.order
    assert (T[0] == np.arange(n)).all() and (T[:, 0] == np.arange(n)).all()
    assert (T[np.arange(n), g.inverse] == 0).all()
    a = T[T[:, :, None], np.arange(n)[None, None, :]]  # (xy)z
    b = T[np.arange(n)[:, None, None], T[None, :, :]]  # x(yz)
    assert (a == b).all()


@pytest.mark.parametrize("name", [n for n in catalog_names() if build_group(n).order <= 64])
def test_catalog_groups_are_groups(name):
    g = build_group(name)
    _axioms(g)
    p = g.p
    assert p is not None
    assert len(frattini(g)) * p ** len(g.spec.pcgens) >= g.order


@pytest.mark.parametrize("name,order", [("D8", 8), ("H16", 16), ("G_2", 32), ("G(2,2)", 32), ("MD16", 16),
                                        ("D8 x C2", 16), ("Q8 x C2 x C2", 32), ("C2 x C2", 4), ("H_1(5)", 625),
                                        ("H_2(3)", 81), ("G_49", 32), ("G_6", 32)])
def test_orders(name, order):
    assert build_group(name).order == order


def test_h16_relation():
    g = build_group("H16")
    a, b, c = g.gen("a"), g.gen("b"), g.gen("c")
    assert commutator(g, a, c) == b
    assert commutator(g, b, c) == 0


def test_md16_presentation():
    g = build_group("MD16")
    a, b = g.gen("a"), g.gen("b")
    assert g.element_order(a) == 8 and g.element_order(b) == 2
    assert commutator(g, a, b) == g.power(a, 4)


def test_h1_relations():
    g = build_group("H_1(5)")
    a, c, d, f = (g.gen(x) for x in "acdf")
    assert commutator(g, a, c) == d
    assert commutator(g, d, c) == f
    assert commutator(g, a, d) == 0


def test_g49_relations():
    g = build_group("G_49")
    a, b, c, d = (g.gen(x) for x in "abcd")
    a2 = g.power(a, 2)
    assert g.power(b, 2) == g.power(c, 2) == g.power(d, 2) == a2
    assert commutator(g, a, b) == a2 and commutator(g, c, d) == a2


def test_commutator_convention():
    g = build_group("D8")
    for x, y in itertools.product(range(8), repeat=2):
        want = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y))
        assert commutator(g, x, y) == want


def test_direct_product():
    g = direct_product(build_group("D8"), build_group("C2"))
    assert g.order == 16
    _axioms(g)
    with pytest.raises(OrderOverflow):
        direct_product(build_group("G_49"), build_group("G_49"), max_order=256)


def test_subgroup_generated_is_closed():
    g = build_group("Q8")
    H = subgroup_generated(g, [g.gen("a")])
    assert len(H) == 4
    assert all(g.mul(x, y) in H for x in H for y in H)


def test_lazard_series_d8():
    g = build_group("D8")
    chain = lazard_series(g, 2)
    assert [len(t) for t in chain.terms] == [8, 2, 1]


def test_powerful():
    assert is_powerful(build_group("C4 x C2"), 2)
    assert not is_powerful(build_group("D8"), 2)


def test_bad_presentations():
    with pytest.raises(ParseError):
        spec_from_text(["gen a order 2 power b"])
    with pytest.raises(ParseError):
        spec_from_text(["gen a order x"])
    bad = spec_from_text(["gen a order 2", "gen b order 2", "comm b a b"])
    with pytest.raises(OrderMismatch):
        group_from_spec(bad)


def test_labels():
    with pytest.raises(UnknownLabel):
        build_group("nonsense")
    with pytest.raises(BadParams):
        catalog_lookup("H_1")
    assert resolve_alias("G_47") == "Q8 x C2 x C2"
