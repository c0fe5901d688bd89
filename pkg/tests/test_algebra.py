from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fmb.algebra import (alg_mul, aug_gen, augmentation, grade_of, in_power, minimal_generators, mul_many, one,
                         radical_filtration, reduce_mod, sub)
from fmb.catalog import build_group
from fmb.field import field_make
from fmb.identities import (congruence_three_ok, congruence_two_ok, identity_one_residual, identity_suite,
                            random_unit, unit_inverse)
from fmb.pgroup import commutator

from conftest import setup


def _naive_mul(g, f, x, y):
    out = [0] * g.order
    for a in range(g.order):
        for b in range(g.order):
            c = f.mul(int(x[a]), int(y[b]))
            if c:
                t = g.mul(a, b)
                out[t] = f.add(out[t], c)
    return np.array(out, dtype=np.uint8)


@pytest.mark.parametrize("name,p,k", [("D8", 2, 1), ("Q8", 2, 2), ("H_2(3)", 3, 1), ("C3 x C3", 3, 1)])
def test_mul_matches_definition(name, p, k, rng):
    g = build_group(name)
    f = field_make(p, k)
    for _ in range(5):
        x = rng.integers(0, f.q, g.order).astype(np.uint8)
        y = rng.integers(0, f.q, g.order).astype(np.uint8)
        assert (alg_mul(g, f, x, y) == _naive_mul(g, f, x, y)).all()


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([("D8", 2, 1), ("Q8", 2, 2), ("H_2(3)", 3, 1)]), st.integers(0, 2 ** 32 - 1))
def test_associative(case, seed):
    name, p, k = case
    g, f = build_group(name), field_make(p, k)
    r = np.random.default_rng(seed)
    x, y, z = (r.integers(0, f.q, g.order).astype(np.uint8) for _ in range(3))
    assert (alg_mul(g, f, alg_mul(g, f, x, y), z) == alg_mul(g, f, x, alg_mul(g, f, y, z))).all()


@pytest.mark.parametrize("name,dims", [("D8", [2, 2, 2, 1]), ("C2 x C2", [2, 1]), ("Q8", [2, 2, 2, 1])])
def test_layer_dims(name, dims):
    _, _, filt = setup(name)
    assert filt.dims[1:] == dims
    assert sum(filt.dims) == build_group(name).order


@pytest.mark.parametrize("name", ["H_2(3)", "H_1(5)"])
def test_layer_dims_sum(name):
    g, _, filt = setup(name)
    assert sum(filt.dims) == g.order


def test_radical_is_augmentation_ideal_powers(gf2):
    g, f, filt = setup("D8")
    assert filt.power(1).dim == g.order - 1
    u = aug_gen(g, f, g.gen("a"))
    assert augmentation(f, u) == 0
    assert grade_of(filt, u) == 1
    assert grade_of(filt, alg_mul(g, f, u, u)) == 2
    assert in_power(filt, aug_gen(g, f, g.power(g.gen("a"), 2)), 2)


def test_d8_commutator_image():
    # (1+a)(1+b) and (1+b)(1+a) differ by 1+a^2 modulo A^3
    g, f, filt = setup("D8")
    a, b = g.gen("a"), g.gen("b")
    A, B = aug_gen(g, f, a), aug_gen(g, f, b)
    diff = sub(f, alg_mul(g, f, A, B), alg_mul(g, f, B, A))
    want = aug_gen(g, f, g.power(a, 2))
    assert not reduce_mod(f, filt.power(3), sub(f, diff, want)[None]).any()


# -- commutator identities --------------------------------------------------


@pytest.mark.parametrize("name,p,k", [("D8", 2, 1), ("Q8", 2, 2), ("H_2(3)", 3, 1), ("H_1(5)", 5, 1),
                                      ("G_49", 2, 1), ("G(2,3)", 2, 1)])
def test_identity_one_exact(name, p, k):
    g, f = build_group(name), field_make(p, k)
    r = np.random.default_rng(7)
    for _ in range(3):
        x, y = random_unit(g, f, r), random_unit(g, f, r)
        assert not identity_one_residual(g, f, x, y).any()


def test_unit_inverse():
    g, f = build_group("H_2(3)"), field_make(3)
    r = np.random.default_rng(1)
    u = random_unit(g, f, r)
    assert (alg_mul(g, f, u, unit_inverse(g, f, u)) == one(g)).all()


@pytest.mark.parametrize("name", ["D8", "Q8", "H16", "H_2(3)", "H_1(5)", "G_23", "G_49"])
def test_congruences_two_and_three(name):
    g, f, filt = setup(name)
    assert congruence_two_ok(g, f, filt)
    n = len(minimal_generators(g))
    r = np.random.default_rng(3)
    assert congruence_three_ok(g, f, filt, r.integers(0, f.q, (n, n)))


def test_congruence_two_sign_matters():
    # in odd characteristic the opposite sign is wrong
    g, f, filt = setup("H_2(3)")
    a, c = g.gen("a"), g.gen("c")
    A, C = aug_gen(g, f, a), aug_gen(g, f, c)
    z = aug_gen(g, f, commutator(g, c, a))
    lhs = sub(f, alg_mul(g, f, C, A), alg_mul(g, f, A, C))
    assert not reduce_mod(f, filt.power(3), sub(f, lhs, z)[None]).any()
    wrong = f.tables.add[lhs, z]
    assert reduce_mod(f, filt.power(3), wrong[None]).any()


def test_identity_suite_report():
    g, f, filt = setup("D8")
    rep = identity_suite(g, f, filt)
    assert rep.passed and "ok" in rep.line()


def test_mul_many_shape():
    g, f = build_group("D8"), field_make(2)
    X = np.eye(8, dtype=np.uint8)
    assert mul_many(g, f, X[:3], X[:5]).shape == (3, 5, 8)
