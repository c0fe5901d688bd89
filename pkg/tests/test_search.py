from __future__ import annotations

import pytest

from fmb.catalog import build_group
from fmb.errors import SearchExhausted
from fmb.field import field_make
from fmb.search import SearchConfig, dfs_search
from fmb.verify import verify_fm_basis


def test_c2c2_found_quickly():
    g, f = build_group("C2 x C2"), field_make(2)
    res = dfs_search(g, f, config=SearchConfig(max_nodes=1000))
    assert res.found and res.nodes < 1000
    assert verify_fm_basis(g, f, None, res.basis).is_basis


def test_q8_gf4_found_and_deterministic():
    g, f = build_group("Q8"), field_make(2, 2)
    cfg = SearchConfig(max_nodes=10 ** 6, correction_depth=None)
    r1, r2 = dfs_search(g, f, config=cfg), dfs_search(g, f, config=cfg)
    assert r1.found and verify_fm_basis(g, f, None, r1.basis).is_basis
    assert r1.basis == r2.basis and r1.nodes == r2.nodes


def test_q8_gf2_not_found_complete():
    res = dfs_search(build_group("Q8"), field_make(2), config=SearchConfig(correction_depth=None))
    assert res.status == "NotFoundComplete" and not res.restricted


def test_budget_exhaustion_is_distinct():
    with pytest.raises(SearchExhausted):
        dfs_search(build_group("H16"), field_make(2), config=SearchConfig(max_nodes=2, correction_depth=None))


def test_jobs_match_sequential():
    g, f = build_group("D8 x C2"), field_make(2)
    seq = dfs_search(g, f, config=SearchConfig(correction_depth=None))
    par = dfs_search(g, f, config=SearchConfig(correction_depth=None, jobs=2))
    assert seq.found and par.found and seq.basis == par.basis


def test_bad_budget():
    with pytest.raises(ValueError):
        SearchConfig(max_nodes=0)
