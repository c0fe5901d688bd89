"""Non-existence certificates by exhausting leading matrices and corrections.

Every leading matrix T in GL(d, q) is tried (one per row-permutation
orbit, since relabelling generators preserves the word set).  If every
configuration violates a necessary condition in KG/A^m, no filtered
multiplicative basis exists.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import Filtration, radical_filtration
from .engine import Budget, Explorer, GradedQuotient, WordEngine, gl_canonical, gl_canonical_iter, gl_order
from .errors import BudgetExhausted
from .field import FieldSpec
from .pgroup import Group

DEFAULT_BUDGET = 10 ** 7

CERTIFIED = "NonExistenceCertified"
INCONCLUSIVE = "Inconclusive"
BUDGET = "BudgetExhausted"


def budget_from_env(default: int) -> int:
    val = os.environ.get("FMB_BUDGET")
    return int(val) if val else default


@dataclass
class MatrixVerdict:
    index: int
    T: np.ndarray
    status: str  # "eliminated", "survives", "unfinished"
    grade: int = 0
    kinds: tuple = ()
    detail: str = ""
    nodes: int = 0
    equalities: list = dc_field(default_factory=list)

    def row_text(self) -> str:
        return ";".join(",".join(str(int(x)) for x in row) for row in self.T)


@dataclass
class ObstructionReport:
    group: str
    field: str
    m: int
    status: str
    verdicts: list[MatrixVerdict]
    nodes: int
    budget: int
    d: int
    q: int

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    @property
    def survivors(self) -> list[MatrixVerdict]:
        return [v for v in self.verdicts if v.status == "survives"]

    def summary(self) -> str:
        elim = sum(v.status == "eliminated" for v in self.verdicts)
        return (f"{self.group} over {self.field}, m={self.m}: {self.status} "
                f"({elim}/{len(self.verdicts)} leading-matrix orbits eliminated, {self.nodes} configurations)")

    def lines(self, expand: bool = True) -> list[str]:
        """Report text; with expand, every matrix of GL(d, q) gets its own line."""
        out = [
            f"# obstruction report",
            f"group {self.group}",
            f"field {self.field}",
            f"truncation m={self.m}",
            f"leading matrices |GL({self.d},{self.q})| = {gl_order(self.q, self.d)}, "
            f"{len(self.verdicts)} row-permutation orbits examined",
            f"configurations {self.nodes} (budget {self.budget})",
            f"status {self.status}",
        ]
        expand = expand and gl_order(self.q, self.d) <= 100000
        for v in self.verdicts:
            tag = v.status if v.status != "eliminated" else f"eliminated grade={v.grade} by {'+'.join(v.kinds)}"
            mats = _permutations(v.T) if expand else [v.T]
            for T in mats:
                out.append(f"T[{v.index}] {';'.join(','.join(str(int(x)) for x in r) for r in T)}  {tag}")
            if v.detail and v.status == "eliminated":
                out.append(f"  first violation: {v.detail}")
            for e in v.equalities:
                out.append(f"  forced: {e}")
        return out

    def write(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write("\n".join(self.lines()) + "\n")


def _permutations(T: np.ndarray) -> list[np.ndarray]:
    return [T[list(perm)] for perm in itertools.permutations(range(T.shape[0]))]


def _canonical(T: np.ndarray) -> np.ndarray:
    return T[np.lexsort(T.T[::-1])]


def _preferred_first(prefer, mats):
    first = [_canonical(np.asarray(T, dtype=np.uint8)) for T in prefer]
    seen = {T.tobytes() for T in first}
    yield from first
    for T in mats:
        if T.tobytes() not in seen:
            yield T


def _hint_planes(Q: GradedQuotient, hint):
    """Canonical leading matrix and quotient planes of hint letters (rows sorted like T)."""
    if hint is None:
        return None, None
    planes = np.atleast_2d(Q.coords(np.asarray(hint, dtype=np.uint8)))
    d = planes.shape[0]
    T = Q.field.tables.from_planes(planes[:, Q.block_slice(1)].reshape(d, -1, Q.kf)).astype(np.uint8)
    order = np.lexsort(T.T[::-1])
    return T[order], planes[order]


def _run_chunk(args):
    g, field, filt, m, items, budget, stop_on_survivor, hint = args
    Q = GradedQuotient(g, field, filt, m)
    engine = WordEngine(Q)
    bud = Budget(budget)
    ex = Explorer(engine, bud, first_survivor=True)
    hint_T, hint_planes = _hint_planes(Q, hint)
    out = []
    for index, T in items:
        try:
            same = hint_T is not None and np.array_equal(T, hint_T)
            res = ex.run_T(T, hint=hint_planes if same else None)
        except BudgetExhausted:
            out.append(MatrixVerdict(index, T, "unfinished", nodes=bud.used))
            return out, True
        if res.eliminated:
            fv = res.first_violation
            out.append(MatrixVerdict(index, T, "eliminated", res.grade, tuple(sorted(res.kinds)),
                                     fv.detail if fv else "", res.nodes))
        else:
            eq = res.survivors[0].equalities if res.survivors else []
            out.append(MatrixVerdict(index, T, "survives", nodes=res.nodes, equalities=eq))
            if stop_on_survivor:
                break
    return out, False


def obstruct(g: Group, field: FieldSpec, m: int, budget: int | None = None, filt: Filtration | None = None,
             leading=None, jobs: int = 1, full_report: bool = True, prefer=(), hint=None) -> ObstructionReport:
    """Try to certify that KG has no filtered multiplicative basis, working in KG/A^m.

    With full_report=False the run stops at the first surviving leading
    matrix (the answer is then Inconclusive whatever the rest do), and
    leading matrices are generated lazily, starting with those in prefer
    (e.g. survivors at a smaller truncation).  hint holds d letters of A
    (e.g. the degree-one elements of a known basis) whose leading matrix and
    corrections are tried first.  Order does not affect the verdict.
    """
    budget = budget_from_env(DEFAULT_BUDGET) if budget is None else budget
    filt = filt or radical_filtration(g, field)
    if filt.field != field:
        filt = filt.with_field(field)
    d = filt.dims[1]
    if leading is None:
        mats = gl_canonical_iter(field, d) if not full_report else gl_canonical(field, d)
        if hint is not None:
            prefer = [_hint_planes(GradedQuotient(g, field, filt, m), hint)[0], *prefer]
        if not full_report and len(prefer):
            mats = _preferred_first(prefer, mats)
    else:
        mats = [np.asarray(T, dtype=np.uint8) for T in leading]
    if not full_report:
        verdicts, hit = _run_chunk((g, field, filt, m, enumerate(mats), budget, True, hint))
        chunks = [(verdicts, hit)]
        total = None if any(v.status == "survives" for v in verdicts) else len(verdicts)
    else:
        items = list(enumerate(mats))
        total = len(items)
        jobs = max(1, min(jobs, len(items)))
        if jobs == 1:
            chunks = [_run_chunk((g, field, filt, m, items, budget, False, hint))]
        else:
            parts = [items[i::jobs] for i in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                chunks = list(pool.map(_run_chunk, [(g, field, filt, m, part, budget // jobs, False, hint)
                                                    for part in parts]))
    verdicts = sorted((v for vs, _ in chunks for v in vs), key=lambda v: v.index)
    hit = any(h for _, h in chunks)
    nodes = sum(v.nodes for v in verdicts)
    if hit:
        status = BUDGET
    elif all(v.status == "eliminated" for v in verdicts) and len(verdicts) == total:
        status = CERTIFIED if leading is None else INCONCLUSIVE
    else:
        status = INCONCLUSIVE
    return ObstructionReport(group=g.name, field=str(field), m=m, status=status, verdicts=verdicts,
                             nodes=nodes, budget=budget, d=d, q=field.q)


def minimal_certifying_m(g: Group, field: FieldSpec, ms=(3, 4, 5), budget: int | None = None,
                         filt: Filtration | None = None, jobs: int = 1, full_report: bool = True,
                         hint=None) -> tuple[int | None, list[ObstructionReport]]:
    """Smallest truncation in ms that certifies non-existence, with all reports tried."""
    filt = filt or radical_filtration(g, field)
    reports = []
    prefer = []
    for m in ms:
        if m > filt.s + 1:
            break
        rep = obstruct(g, field, m, budget, filt, jobs=jobs, full_report=full_report, prefer=prefer,
                       hint=hint)
        reports.append(rep)
        prefer = [v.T for v in rep.survivors]
        if rep.certified:
            return m, reports
    return None, reports
