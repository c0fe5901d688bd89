"""Depth-first search for a filtered multiplicative basis.

The search runs the word engine on the whole algebra (m = s+1).  A
configuration that passes every check determines its words exactly, and
B = {1} u (distinct nonzero words) is then handed to the verifier.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algebra import Filtration, one, radical_filtration
from .engine import Budget, Explorer, GradedQuotient, WordEngine, gl_canonical
from .errors import BudgetExhausted, SearchExhausted
from .field import FieldSpec
from .pgroup import Group
from .verify import BasisCandidate, VerifyReport, verify_fm_basis

FOUND = "Found"
NOT_FOUND = "NotFoundComplete"


@dataclass
class SearchConfig:
    max_nodes: int = 10 ** 7
    grade_cap: int | None = None  # highest correction grade enumerated
    correction_depth: int | None = 2  # grades above 1 that get corrections; None means all
    seed_letters: np.ndarray | None = None  # fixed generators; corrections are added on top
    deterministic: bool = True
    jobs: int = 1

    def __post_init__(self):
        if self.max_nodes <= 0:
            raise ValueError("budget must be positive")


@dataclass
class SearchResult:
    status: str
    basis: BasisCandidate | None
    nodes: int
    restricted: bool
    leading: np.ndarray | None = None
    letters: np.ndarray | None = None
    report: VerifyReport | None = None

    @property
    def found(self) -> bool:
        return self.status == FOUND


def _max_correction(filt: Filtration, cfg: SearchConfig) -> int:
    top = filt.s - 1
    grade = top if cfg.correction_depth is None else min(top, 1 + cfg.correction_depth)
    if cfg.grade_cap is not None:
        grade = min(grade, cfg.grade_cap)
    return grade


def _search_chunk(args):
    g, field, filt, cfg, items, base, budget = args
    Q = GradedQuotient(g, field, filt, filt.s + 1)
    engine = WordEngine(Q)
    bud = Budget(budget)
    found = {}

    def on_leaf(gens, corr, view):
        W = view.W[np.any(view.W != 0, axis=1)]
        rows = np.unique(W, axis=0)
        elems = Q.element(rows).reshape(len(rows), g.order)
        B = np.vstack([one(g)[None], elems])
        if B.shape[0] != g.order:
            return False
        cand = BasisCandidate(B, "search", field)
        rep = verify_fm_basis(g, field, filt, cand)
        if rep.is_basis:
            found["basis"] = cand.sorted()
            found["report"] = rep
            found["letters"] = Q.element(gens).reshape(gens.shape[0], g.order)
            return True
        return False

    ex = Explorer(engine, bud, max_correction_grade=_max_correction(filt, cfg), on_leaf=on_leaf, keep_survivors=0)
    for index, T in items:
        try:
            ex.run_T(T, base)
        except BudgetExhausted:
            return None, bud.used, True
        if found:
            return (index, T, found["basis"], found["report"], found["letters"]), bud.used, False
    return None, bud.used, False


def dfs_search(g: Group, field: FieldSpec, filt: Filtration | None = None,
               config: SearchConfig | None = None) -> SearchResult:
    """Search for a basis; raises SearchExhausted when the node budget runs out."""
    cfg = config or SearchConfig()
    filt = filt or radical_filtration(g, field)
    if filt.field != field:
        filt = filt.with_field(field)
    d = filt.dims[1]
    base = None
    if cfg.seed_letters is not None:
        Q = GradedQuotient(g, field, filt, filt.s + 1)
        base = np.atleast_2d(Q.coords(cfg.seed_letters))
        sl = Q.block_slice(1)
        T = field.tables.from_planes(base[:, sl].reshape(base.shape[0], -1, field.k))
        mats = [T]
    else:
        mats = gl_canonical(field, d)
    items = list(enumerate(mats))
    restricted = _max_correction(filt, cfg) < filt.s - 1
    jobs = max(1, min(cfg.jobs, len(items)))
    if jobs == 1:
        results = [_search_chunk((g, field, filt, cfg, items, base, cfg.max_nodes))]
    else:
        # contiguous chunks keep the lowest-index success equal to the sequential answer
        size = -(-len(items) // jobs)
        parts = [items[i:i + size] for i in range(0, len(items), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_chunk, [(g, field, filt, cfg, part, base, cfg.max_nodes // jobs)
                                                    for part in parts]))
    nodes = sum(r[1] for r in results)
    hits = [r[0] for r in results if r[0] is not None]
    if hits:
        index, T, basis, rep, letters = min(hits, key=lambda h: h[0])
        return SearchResult(FOUND, basis, nodes, restricted, T, letters, rep)
    if any(r[2] for r in results):
        raise SearchExhausted(f"search budget of {cfg.max_nodes} nodes exhausted", nodes)
    return SearchResult(NOT_FOUND, None, nodes, restricted)
