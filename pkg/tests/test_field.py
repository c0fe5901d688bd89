from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from fmb.errors import DegreeMismatch, DivisionByZero, NotPrime, ReducibleModulus
from fmb.field import field_arith, field_make, has_primitive_cube_root, is_irreducible, parse_field

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (5, 2), (7, 2), (2, 3)]


def _poly_mul_mod(a, b, p, mod):
    """Schoolbook product of coefficient tuples reduced by a monic modulus."""
    k = len(mod) - 1
    prod = [0] * (2 * k)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    return tuple(prod[:k])


@pytest.mark.parametrize("p,k", FIELDS)
def test_axioms_exhaustive(p, k):
    f = field_make(p, k)
    els = list(f.elements())
    assert len(els) == p ** k
    for x, y in itertools.product(els, repeat=2):
        assert f.add(x, y) == f.add(y, x)
        assert f.mul(x, y) == f.mul(y, x)
        assert f.add(x, f.neg(x)) == 0
    for x in els[1:]:
        assert f.mul(x, f.inv(x)) == 1


@pytest.mark.parametrize("p,k", FIELDS)
def test_mul_matches_polynomial_oracle(p, k):
    f = field_make(p, k)
    for x, y in itertools.product(f.elements(), repeat=2):
        want = _poly_mul_mod(f.coeffs(x), f.coeffs(y), p, f.modulus)
        assert f.coeffs(f.mul(x, y)) == want


@given(st.sampled_from(FIELDS), st.data())
def test_ring_laws_random(pk, data):
    f = field_make(*pk)
    x, y, z = (data.draw(st.integers(0, f.q - 1)) for _ in range(3))
    assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
    assert f.add(f.add(x, y), z) == f.add(x, f.add(y, z))
    assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))


def test_prime_field_is_integers_mod_p():
    f = field_make(3)
    assert field_arith(f, "add", 2, 2) == 1
    assert field_arith(f, "mul", 2, 2) == 1


def test_gf4_examples():
    f = field_make(2, 2, [1, 1, 1])
    w = 2  # the class of x
    assert f.modulus == (1, 1, 1)
    assert field_arith(f, "mul", w, w) == 3
    assert field_arith(f, "inv", w) == 3


def test_default_modulus_is_smallest_irreducible():
    assert field_make(2, 2).modulus == (1, 1, 1)
    assert field_make(3, 2).modulus == (1, 0, 1)
    assert field_make(2, 2) == field_make(2, 2)


def test_errors():
    with pytest.raises(NotPrime):
        field_make(4, 1)
    with pytest.raises(ReducibleModulus):
        field_make(2, 2, [1, 0, 1])
    with pytest.raises(DegreeMismatch):
        field_make(2, 2, [1, 1])
    with pytest.raises(DivisionByZero):
        field_arith(field_make(5), "inv", 0)


@pytest.mark.parametrize("p,k,expect", [(2, 1, False), (2, 2, True), (7, 1, True), (3, 1, False), (3, 2, False),
                                        (5, 1, False), (5, 2, True)])
def test_cube_roots(p, k, expect):
    f = field_make(p, k)
    ok, w = has_primitive_cube_root(f)
    assert ok == expect == (p != 3 and (f.q - 1) % 3 == 0)
    if ok:
        assert w != 1 and f.mul(f.mul(w, w), w) == 1


def test_cube_root_witness_gf7():
    assert has_primitive_cube_root(field_make(7))[1] in (2, 4)


def test_irreducibility_oracle():
    # a quadratic is irreducible iff it has no root
    for p in (2, 3, 5):
        for c0, c1 in itertools.product(range(p), repeat=2):
            roots = any((c0 + c1 * x + x * x) % p == 0 for x in range(p))
            assert is_irreducible([c0, c1, 1], p) == (not roots)


def test_parse_field():
    assert parse_field("GF(4)") == field_make(2, 2)
    assert parse_field("p=3") == field_make(3)
    assert parse_field("p=2 k=2 modulus=1,1,1") == field_make(2, 2)
    assert parse_field("GF(2^3)") == field_make(2, 3)
