from __future__ import annotations

import pytest

from fmb.algebra import dimension_subgroup, grade_of
from fmb.catalog import build_group
from fmb.field import field_make
from fmb.jennings import jennings_crosscheck, jennings_profile, monomial_elements, regular_monomials
from fmb.pgroup import lazard_series

from conftest import setup


@pytest.mark.parametrize("name", ["C4 x C2", "D8", "Q8", "H16", "D8YC4", "G_23", "G_27", "G_49", "G_6",
                                  "H_2(3)", "H_1(5)", "SD16", "MD16"])
def test_crosscheck(name):
    g, f, filt = setup(name)
    rep = jennings_crosscheck(g, f, filt)
    assert rep.passed, "\n".join(rep.lines())


def test_poincare_equals_layer_dims():
    for name in ("D8", "G_27", "H_2(3)"):
        g, f, filt = setup(name)
        prof = jennings_profile(g, f.p, filt)
        assert prof.poincare() == filt.dims


def test_h1_grade_three():
    _, _, filt = setup("H_1(5)")
    assert filt.dims[3] == 7


def test_weights_are_grades():
    g, f, filt = setup("D16")
    prof = jennings_profile(g, 2, filt)
    X = monomial_elements(prof, g, f)
    for mon, x in zip(regular_monomials(prof), X):
        assert grade_of(filt, x) == mon.weight


@pytest.mark.parametrize("name", ["D8", "Q16", "G_23", "H_2(3)"])
def test_dimension_subgroups(name):
    g, f, filt = setup(name)
    terms = lazard_series(g, f.p).terms
    for n in range(1, len(terms) + 1):
        want = terms[n - 1] if n <= len(terms) else frozenset([0])
        assert dimension_subgroup(g, filt, n) == frozenset(want)


def test_crosscheck_over_gf4():
    g = build_group("Q8")
    rep = jennings_crosscheck(g, field_make(2, 2))
    assert rep.passed
