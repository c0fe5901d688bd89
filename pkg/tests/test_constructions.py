from __future__ import annotations

import numpy as np
import pytest

from fmb.algebra import radical_filtration
from fmb.catalog import build_group
from fmb.constructions import (G49_WORDS, RepairLog, abelian_basis, construct, cyclic_decomposition, dihedral_basis,
                               g49_basis, product_basis, q8_basis, gnm_basis, gnm_chain)
from fmb.errors import FieldMismatch, NoCubeRoot, NotAbelian, RepairFailed
from fmb.field import field_make
from fmb.verify import verify_fm_basis

from conftest import setup


def _ok(name, f, cand):
    g = build_group(name)
    return verify_fm_basis(g, f, radical_filtration(g, f), cand).is_basis


@pytest.mark.parametrize("name,p", [("C4 x C2", 2), ("C3 x C3", 3), ("C2 x C2", 2), ("C4", 2)])
def test_abelian(name, p):
    f = field_make(p)
    assert _ok(name, f, abelian_basis(build_group(name), f))


def test_cyclic_decomposition():
    g = build_group("C4 x C2")
    dec = cyclic_decomposition(g)
    assert sorted(q for _, q in dec) == [2, 4]
    with pytest.raises(NotAbelian):
        cyclic_decomposition(build_group("D8"))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_dihedral(n):
    f = field_make(2)
    assert _ok(f"D{2 ** n}", f, dihedral_basis(n, f))


def test_product_basis():
    f = field_make(2)
    b = product_basis(dihedral_basis(3, f), abelian_basis(build_group("C2"), f))
    assert _ok("D8 x C2", f, b)
    with pytest.raises(FieldMismatch):
        product_basis(q8_basis(field_make(2, 2)), abelian_basis(build_group("C2"), f))


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2)])
def test_gnm(n, m):
    f = field_make(2)
    assert _ok(f"G({n},{m})", f, gnm_basis(n, m, f))


def test_gnm_chain_spans_each_layer():
    f = field_make(2)
    for layer in gnm_chain(2, 2, f):
        assert layer.rank == layer.dim


def test_q8():
    f4 = field_make(2, 2)
    assert _ok("Q8", f4, q8_basis(f4))
    f7 = field_make(7)
    cand = q8_basis(f7)
    g = build_group("Q8")
    rep = verify_fm_basis(g, f7, None, cand)
    assert rep.rank_ok and not rep.closure_failures
    with pytest.raises(NoCubeRoot):
        q8_basis(field_make(2))


def test_g49_literal_words_collapse():
    log: list[RepairLog] = []
    with pytest.raises(RepairFailed):
        g49_basis(field_make(2), budget=10 ** 4, log=log)
    assert log[0].literal_distinct == len(set(G49_WORDS)) < 32
    assert not log[0].literal_ok and not log[0].closure_ok


@pytest.mark.parametrize("name", ["D8 x C2", "G_2", "G_22", "G_25", "G_39", "G_46", "H16"])
def test_construct_dispatch(name):
    f = field_make(2)
    assert _ok(name, f, construct(name, f))
