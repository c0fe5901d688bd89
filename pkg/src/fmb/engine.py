"""Truncated word engine shared by the obstruction and search modules.

Setting.  KG is local with radical A.  If B is a filtered multiplicative
basis then B = {1} u (nonzero words in b_1..b_d), where b_1..b_d are the
elements of B outside A^2.  Modulo A^m each b_k is
    b_k = (leading part, row k of T) + c_k^(2) + ... + c_k^(m-1)
with c_k^(j) in the grade-j block of a graded basis of KG/A^m.

Stages.  At stage j the corrections of grades < j are fixed and the rest
are unknown.  A word of length L >= 2 is then known modulo A^{j+L-1}
(capped at m).  Two necessary conditions are checked on what is known:

  N1  at grade k the distinct classes of words of grade k are linearly
      independent; once every word of length <= k is known past grade k
      (j >= k) their number equals dim A^k/A^{k+1}.
  N2  words with the same nonzero class are equal; they must agree in
      every block known for both.

Going from stage j to j+1 fixes c^(j).  The newly revealed block of each
word is affine in c^(j), so the N2 equalities between already-matched
words are linear equations; they are solved first and only solutions are
enumerated.  At the last relevant stage only the image of c^(m-2) in the
top block of the length-2 words matters, so one representative per
image point is enumerated.

Leading matrices are enumerated up to row permutation (relabelling the
generators does not change the word set).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import Filtration, mul_many, radical_filtration, reduce_mod
from .errors import BadTruncation, BudgetExhausted
from .field import FieldSpec, field_make
from .jennings import jennings_profile, monomial_elements, regular_monomials
from .linalg import inverse, rank, rref
from .pgroup import Group


@dataclass
class Violation:
    grade: int
    kind: str  # "N1-dependent", "N1-count", "N2", "N2-linear"
    detail: str = ""


class GradedQuotient:
    """KG/A^m in the basis of regular monomials of weight < m.

    Coordinates over K are held as integer planes: coordinate a of a
    K-vector occupies slots a*k .. a*k+k-1 (polynomial-basis digits).
    """

    def __init__(self, g: Group, field: FieldSpec, filt: Filtration | None, m: int):
        filt = filt or radical_filtration(g, field)
        if filt.field != field:
            filt = filt.with_field(field)
        if not 2 <= m <= filt.s + 1:
            raise BadTruncation(f"truncation m={m} outside 2..{filt.s + 1}")
        self.g, self.field, self.filt, self.m = g, field, filt, m
        self.p, self.kf = field.p, field.k
        fp = field_make(self.p)
        prof = jennings_profile(g, self.p, filt)
        mons = regular_monomials(prof)
        X = monomial_elements(prof, g, fp)
        weights = np.array([mo.weight for mo in mons])
        order = [i for w in range(m) for i in np.nonzero(weights == w)[0]]
        self.profile = prof
        self.monomials = [mons[i] for i in order]
        self.E = X[order]  # (r, n) over GF(p)
        self.deltas = [int((weights == w).sum()) for w in range(m)]
        if self.deltas != filt.dims[:m]:
            raise AssertionError("regular monomials disagree with the filtration")
        self.offsets = np.concatenate([[0], np.cumsum(self.deltas)]).astype(int)
        self.r = int(self.offsets[-1])
        self.rk = self.r * self.kf
        ideal = filt.power(m)
        self._ideal = ideal
        free = np.setdiff1d(np.arange(g.order), ideal.pivots)
        self._free = free
        Ered = reduce_mod(fp, ideal, self.E)[:, free]
        self._Einv = inverse(fp, Ered).astype(np.int64)  # (r, r) over GF(p)
        prods = mul_many(g, fp, self.E, self.E).reshape(-1, g.order)
        S = self._coords_prime(prods).reshape(self.r, self.r, self.r)
        M = field.mul_tensor
        # SM[(a,s),(b,u),(c,v)] = S[a,b,c] M[s,u,v]
        self.SM = np.einsum("abc,suv->asbucv", S, M).reshape(self.rk, self.rk, self.rk) % self.p
        self.block_of = np.repeat(np.arange(m), self.deltas)

    # -- conversions -----------------------------------------------------
    def _coords_prime(self, X: np.ndarray) -> np.ndarray:
        fp = field_make(self.p)
        red = reduce_mod(fp, self._ideal, X).astype(np.int64)[..., self._free]
        return (red @ self._Einv) % self.p

    def coords(self, x) -> np.ndarray:
        """Planes vector (rk,) of an element of KG (codes)."""
        x = np.atleast_2d(np.asarray(x, dtype=np.uint8))
        planes = self.field.tables.to_planes(x)  # (N, n, k)
        out = np.stack([self._coords_prime(planes[:, :, s].astype(np.uint8)) for s in range(self.kf)], axis=-1)
        out = out.reshape(x.shape[0], self.rk)
        return out[0] if out.shape[0] == 1 else out

    def element(self, planes) -> np.ndarray:
        """KG codes of a coordinate planes vector (exact when m = s+1)."""
        planes = np.asarray(planes, dtype=np.int64).reshape(-1, self.r, self.kf)
        E = self.E.astype(np.int64)
        vals = np.einsum("nas,ag->ngs", planes, E) % self.p
        out = self.field.tables.from_planes(vals)
        return out[0] if out.shape[0] == 1 else out

    def to_codes(self, planes) -> np.ndarray:
        planes = np.asarray(planes, dtype=np.int64)
        return self.field.tables.from_planes(planes.reshape(planes.shape[:-1] + (self.r, self.kf)))

    def block_slice(self, j: int) -> slice:
        return slice(int(self.offsets[j]) * self.kf, int(self.offsets[j + 1]) * self.kf)

    # -- products ----------------------------------------------------------
    def right_mats(self, gens: np.ndarray) -> np.ndarray:
        """(B, d, rk) generator planes -> (B, d, rk, rk) right-multiplication matrices."""
        return np.tensordot(gens, self.SM, axes=([2], [1])) % self.p

    def words(self, gens: np.ndarray, Lmax: int) -> list[np.ndarray]:
        """All words up to length Lmax; entry L-1 has shape (B, d^L, rk)."""
        gens = np.asarray(gens, dtype=np.int64)
        if gens.ndim == 2:
            gens = gens[None]
        # float matmuls are exact here (entries < p, sums far below 2^53) and use BLAS
        R = self.right_mats(gens).astype(np.float64)
        B, d = gens.shape[0], gens.shape[1]
        out = [gens % self.p]
        prev = out[0].astype(np.float64)
        for _ in range(1, Lmax):
            nxt = np.stack([np.matmul(prev, R[:, k]) for k in range(d)], axis=2) % self.p
            prev = nxt.reshape(B, -1, self.rk)
            out.append(prev.astype(np.int64))
        return out


def word_tuples(d: int, L: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(d), repeat=L))


def word_name(w: tuple[int, ...]) -> str:
    return "".join(f"b{i + 1}" for i in w)


@dataclass
class StageView:
    """Known information about every word at one stage."""

    W: np.ndarray  # (N, rk) planes
    lengths: np.ndarray
    vt: np.ndarray  # known modulo A^vt
    grade: np.ndarray  # known grade or -1
    classes: dict  # grade -> (indices, inverse labels, unique class codes)


class WordEngine:
    def __init__(self, quotient: GradedQuotient, d: int | None = None):
        self.Q = quotient
        self.m = quotient.m
        self.d = d if d is not None else quotient.deltas[1]
        self.Lmax = self.m - 1
        self.lengths = np.concatenate(
            [np.full(self.d ** L, L) for L in range(1, self.Lmax + 1)]
        ) if self.Lmax >= 1 else np.zeros(0, dtype=int)
        self.starts = np.concatenate([[0], np.cumsum([self.d ** L for L in range(1, self.Lmax + 1)])])
        kf, Q = quotient.kf, quotient
        # block membership of plane slots
        self.slot_block = np.repeat(Q.block_of, kf)

    def word_of(self, idx: int) -> tuple[int, ...]:
        L = int(self.lengths[idx])
        off = idx - int(self.starts[L - 1])
        digits = []
        for _ in range(L):
            digits.append(off % self.d)
            off //= self.d
        return tuple(reversed(digits))

    def all_words(self, gens: np.ndarray) -> np.ndarray:
        """(B, N, rk) for batch gens (B, d, rk)."""
        ws = self.Q.words(gens, self.Lmax)
        return np.concatenate(ws, axis=1)

    # -- the two conditions ---------------------------------------------
    def view(self, W: np.ndarray, j: int) -> StageView:
        Q, m = self.Q, self.m
        L = self.lengths
        vt = np.minimum(m, j + L - 1)
        vt[L == 1] = 2  # generators only enter through their leading part
        nzslot = W != 0
        block_nz = np.zeros((W.shape[0], m), dtype=bool)
        for b in range(m):
            sl = Q.block_slice(b)
            block_nz[:, b] = nzslot[:, sl].any(axis=1)
        known = block_nz & (np.arange(m)[None, :] < vt[:, None])
        has = known.any(axis=1)
        grade = np.where(has, known.argmax(axis=1), -1)
        classes = {}
        for k in range(2, m):
            idx = np.nonzero((grade == k) & (L >= 2))[0]
            if not len(idx):
                classes[k] = (idx, np.zeros(0, dtype=int), np.zeros((0, 0), dtype=np.int64))
                continue
            cls = W[idx][:, Q.block_slice(k)]
            uniq, inv = np.unique(cls, axis=0, return_inverse=True)
            classes[k] = (idx, inv.reshape(-1), uniq)
        return StageView(W=W, lengths=L, vt=vt, grade=grade, classes=classes)

    def check(self, W: np.ndarray, j: int, complete_upto: int | None = None) -> tuple[Violation | None, StageView]:
        """Apply N1 and N2 to the words W at stage j."""
        Q, m = self.Q, self.m
        v = self.view(W, j)
        complete_upto = j if complete_upto is None else complete_upto
        for k in range(2, m):
            idx, inv, uniq = v.classes[k]
            count = len(uniq)
            if count:
                codes = Q.field.tables.from_planes(uniq.reshape(count, -1, Q.kf))
                if count > Q.deltas[k] or rank(Q.field, codes) < count:
                    return Violation(k, "N1-dependent",
                                     f"{count} distinct grade-{k} classes are dependent (dim {Q.deltas[k]})"), v
            if k <= complete_upto and count < Q.deltas[k]:
                return Violation(k, "N1-count",
                                 f"only {count} grade-{k} classes, dim A^{k}/A^{k+1} = {Q.deltas[k]}"), v
            viol = self._n2_groups(v, k)
            if viol is not None:
                return viol, v
        return None, v

    def _n2_groups(self, v: StageView, k: int) -> Violation | None:
        idx, inv, uniq = v.classes[k]
        if len(idx) < 2 or len(uniq) == len(idx):
            return None
        Q = self.Q
        for label in np.nonzero(np.bincount(inv) > 1)[0]:
            members = idx[inv == label]
            for a, b in itertools.combinations(members, 2):
                t = int(min(v.vt[a], v.vt[b]))
                hi = int(Q.offsets[t]) * Q.kf
                if not np.array_equal(v.W[a, :hi], v.W[b, :hi]):
                    return Violation(k, "N2", f"{word_name(self.word_of(a))} and {word_name(self.word_of(b))} "
                                              f"share a grade-{k} class but differ modulo A^{t}")
        return None

    def matched_pairs(self, v: StageView) -> list[tuple[int, int, int]]:
        """Pairs (a, b, k) of words sharing a nonzero grade-k class, a < b."""
        out = []
        for k in range(2, self.m):
            idx, inv, uniq = v.classes[k]
            if len(idx) < 2:
                continue
            for label in np.nonzero(np.bincount(inv) > 1)[0]:
                members = idx[inv == label]
                for a, b in itertools.combinations(members, 2):
                    out.append((int(a), int(b), k))
        return out

    def forced_equalities(self, v: StageView) -> list[str]:
        out = []
        for a, b, k in self.matched_pairs(v):
            out.append(f"{word_name(self.word_of(a))} = {word_name(self.word_of(b))} (grade {k})")
        return out


# -- leading matrices -------------------------------------------------------


def gl_canonical_iter(field: FieldSpec, d: int):
    """Invertible d x d matrices with strictly increasing rows (one per row-permutation orbit).

    Rows are ordered lexicographically by their code tuples, so matrices come
    out in row-lexicographic order.  Lazy, for groups where GL(d, q) is large.
    """
    q = field.q
    vecs = np.array(list(itertools.product(range(q), repeat=d)), dtype=np.uint8)
    t = field.tables
    weights = q ** np.arange(d - 1, -1, -1)

    def span_of(rows: list[int]) -> set[int]:
        M = vecs[rows]
        combos = np.array(list(itertools.product(range(q), repeat=len(rows))), dtype=np.uint8)
        acc = np.zeros((len(combos), d), dtype=np.uint8)
        for i in range(len(rows)):
            acc = t.add[acc, t.mul[combos[:, i][:, None], M[i][None, :]]]
        return set((acc.astype(np.int64) @ weights).tolist())

    def rec(chosen: list[int], span: set[int]):
        if len(chosen) == d:
            yield vecs[chosen].copy()
            return
        start = chosen[-1] + 1 if chosen else 1
        for v in range(start, q ** d):
            if v not in span:
                yield from rec(chosen + [v], span_of(chosen + [v]))

    yield from rec([], {0})


def gl_canonical(field: FieldSpec, d: int) -> list[np.ndarray]:
    return list(gl_canonical_iter(field, d))


def gl_order(q: int, d: int) -> int:
    return math.prod(q ** d - q ** i for i in range(d))


# -- depth-first exploration ----------------------------------------------------


@dataclass
class Config:
    T: np.ndarray
    corrections: dict  # grade -> (d, delta_j) codes
    gens: np.ndarray  # planes (d, rk)


@dataclass
class LeafInfo:
    config: Config
    equalities: list[str]


@dataclass
class TResult:
    T: np.ndarray
    eliminated: bool
    grade: int = 0  # deepest grade at which a branch died
    kinds: set = dc_field(default_factory=set)
    survivors: list = dc_field(default_factory=list)
    nodes: int = 0
    first_violation: Violation | None = None


class Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(f"configuration budget of {self.limit} exhausted", self.used)


class Explorer:
    """Stage-wise search over corrections for one leading matrix at a time.

    max_correction_grade limits which correction grades are enumerated;
    higher corrections stay at the base value.  on_leaf is called with each
    surviving configuration and may return True to stop the whole search.
    """

    def __init__(self, engine: WordEngine, budget: Budget, max_correction_grade: int | None = None,
                 on_leaf=None, keep_survivors: int = 3, first_survivor: bool = False):
        self.E = engine
        self.Q = engine.Q
        self.budget = budget
        self.maxc = self.Q.m - 2 if max_correction_grade is None else min(max_correction_grade, self.Q.m - 2)
        self.on_leaf = on_leaf
        self.keep = keep_survivors
        self.first_survivor = first_survivor  # a surviving leaf settles T, skip the rest of its tree
        self.stop = False
        self._t_done = False
        self._hint = None

    def base_gens(self, T: np.ndarray) -> np.ndarray:
        Q = self.Q
        d = T.shape[0]
        gens = np.zeros((d, Q.rk), dtype=np.int64)
        sl = Q.block_slice(1)
        gens[:, sl] = Q.field.tables.to_planes(T).reshape(d, -1)
        return gens

    def run_T(self, T: np.ndarray, base: np.ndarray | None = None, hint: np.ndarray | None = None) -> TResult:
        """hint: (d, rk) planes of letters with leading matrix T; their corrections are tried first."""
        res = TResult(T=T, eliminated=True)
        gens = self.base_gens(T) if base is None else np.asarray(base, dtype=np.int64).copy()
        start = self.budget.used
        self._t_done = False
        self._hint = None if hint is None else np.asarray(hint, dtype=np.int64) % self.Q.p
        self._dfs(2, gens, {}, res)
        res.nodes = self.budget.used - start
        if res.survivors:
            res.eliminated = False
        return res

    def _dfs(self, j: int, gens: np.ndarray, corr: dict, res: TResult):
        if self.stop or self._t_done:
            return
        self.budget.tick()
        Q, E = self.Q, self.E
        W = E.all_words(gens[None])[0]
        # past the last enumerated grade the remaining corrections are fixed,
        # so every word is known exactly in KG/A^m
        jj = j if j <= self.maxc else Q.m
        viol, view = E.check(W, jj)
        if viol is not None:
            self._record(res, viol)
            return
        if j > self.maxc:
            res.eliminated = False
            if len(res.survivors) < self.keep:
                res.survivors.append(LeafInfo(Config(res.T, dict(corr), gens.copy()), E.forced_equalities(view)))
            if self.on_leaf is not None and self.on_leaf(gens, corr, view):
                self.stop = True
            self._t_done = self.first_survivor
            return
        for c_codes, new_gens in self._corrections(j, gens, view, res):
            corr2 = dict(corr)
            corr2[j] = c_codes
            self._dfs(j + 1, new_gens, corr2, res)
            if self.stop or self._t_done:
                return

    def _record(self, res: TResult, viol: Violation):
        res.grade = max(res.grade, viol.grade)
        res.kinds.add(viol.kind)
        if res.first_violation is None:
            res.first_violation = viol

    def _corrections(self, j: int, gens: np.ndarray, view: StageView, res: TResult):
        """Yield (codes, gens) for the admissible grade-j corrections."""
        Q, E = self.Q, self.E
        field, kf, p = Q.field, Q.kf, Q.p
        d = gens.shape[0]
        dj = Q.deltas[j]
        nvar = d * dj
        sl = Q.block_slice(j)
        # unit perturbations: variable (gen k, coordinate x) set to 1
        units = np.repeat(gens[None], nvar + 1, axis=0)
        for var in range(nvar):
            k, x = divmod(var, dj)
            units[var + 1, k, sl.start + x * kf] = (units[var + 1, k, sl.start + x * kf] + 1) % p
        Wu = E.all_words(units)
        W0 = Wu[0]
        D = (Wu[1:] - W0[None]) % p  # (nvar, N, rk) linear parts (exact on new blocks)
        t = field.tables
        # linear N2 equations from matched pairs
        rows_eq = []
        rhs_eq = []
        for a, b, k in E.matched_pairs(view):
            La, Lb = int(E.lengths[a]), int(E.lengths[b])
            tb = j + min(La, Lb) - 1
            if tb >= Q.m:
                continue
            bs = Q.block_slice(tb)
            lin = (D[:, a, bs] - D[:, b, bs]) % p  # (nvar, delta_tb*kf)
            const = (W0[b, bs] - W0[a, bs]) % p
            rows_eq.append(t.from_planes(lin.reshape(nvar, Q.deltas[tb], kf)).T)
            rhs_eq.append(t.from_planes(const.reshape(Q.deltas[tb], kf)))
        sol = _solve_affine(field, nvar, rows_eq, rhs_eq)
        if sol is None:
            self._record(res, Violation(j + 1, "N2-linear", f"matched words force inconsistent grade-{j} corrections"))
            return
        c0, kernel = sol
        first = self._hinted(gens, sl, c0, kernel)
        if j == Q.m - 2 and len(kernel):
            kernel = self._image_representatives(kernel, D, view)

        def step(c):
            new = gens.copy()
            cp = t.to_planes(c).reshape(d, dj * kf)
            new[:, sl] = (new[:, sl] + cp) % p
            return c.reshape(d, dj), new

        if first is not None:
            yield step(first)
            if self.stop:
                return
        for ys in itertools.product(range(field.q), repeat=len(kernel)):
            c = c0.copy()
            for y, kv in zip(ys, kernel):
                if y:
                    c = t.add[c, t.mul[y, kv]]
            if first is not None and (c == first).all():
                continue
            yield step(c)
            if self.stop:
                return

    def _hinted(self, gens: np.ndarray, sl: slice, c0: np.ndarray, kernel: np.ndarray) -> np.ndarray | None:
        """The hint's grade-j correction when gens agree with the hint below grade j and it is admissible."""
        h = self._hint
        if h is None or not (gens[:, :sl.start] % self.Q.p == h[:, :sl.start]).all():
            return None
        field = self.Q.field
        t = field.tables
        diff = (h[:, sl] - gens[:, sl]) % self.Q.p
        c = t.from_planes(diff.reshape(-1, self.Q.kf)).reshape(-1).astype(np.uint8)
        off = t.add[c, t.neg[c0]]
        if not off.any():
            return c
        if not len(kernel) or rank(field, np.vstack([kernel, off[None]])) > rank(field, kernel):
            return None
        return c

    def _image_representatives(self, kernel: np.ndarray, D: np.ndarray, view: StageView) -> np.ndarray:
        """Kernel vectors whose effect on the final check spans the whole effect.

        After the last correction only the top block of length-2 words that
        are still zero below it can change a verdict: words with a known
        class enter N1 at their own grade, and their top block is already
        pinned by the N2 equations.
        """
        Q, E = self.Q, self.E
        field = Q.field
        t = field.tables
        s2, e2 = int(E.starts[1]), int(E.starts[2])
        deep = s2 + np.nonzero(view.grade[s2:e2] == -1)[0]
        if not len(deep):
            return kernel[:0]
        top = Q.block_slice(Q.m - 1)
        lin = D[:, deep][:, :, top]  # (nvar, deep words, delta*kf) planes
        lin_codes = t.from_planes(lin.reshape(lin.shape[0], -1, Q.kf))  # (nvar, cols) K codes
        kept = []
        acc = np.zeros((0, lin_codes.shape[1]), dtype=np.uint8)
        r0 = 0
        for kv in kernel:
            # image of kv = sum_var kv[var] * lin_codes[var]
            img = np.zeros(lin_codes.shape[1], dtype=np.uint8)
            for var in np.nonzero(kv)[0]:
                img = t.add[img, t.mul[kv[var], lin_codes[var]]]
            cand = np.vstack([acc, img[None]])
            r = rank(field, cand) if cand.any() else 0
            if r > r0:
                kept.append(kv)
                acc, r0 = cand, r
        return np.array(kept, dtype=np.uint8).reshape(len(kept), kernel.shape[1])


def _solve_affine(field: FieldSpec, nvar: int, rows_eq: list, rhs_eq: list):
    """Solve the stacked K-linear system; returns (particular, kernel basis) or None."""
    t = field.tables
    if not rows_eq:
        return np.zeros(nvar, dtype=np.uint8), np.eye(nvar, dtype=np.uint8)
    A = np.vstack([r.reshape(-1, nvar) for r in rows_eq])
    b = np.concatenate([x.reshape(-1) for x in rhs_eq])
    aug = np.hstack([A, b[:, None]]).astype(np.uint8)
    sub = rref(field, aug)
    piv = sub.pivots.tolist()
    if piv and piv[-1] == nvar:
        return None
    c0 = np.zeros(nvar, dtype=np.uint8)
    for row, c in zip(sub.rows, piv):
        c0[c] = row[nvar]
    free = [c for c in range(nvar) if c not in piv]
    kernel = np.zeros((len(free), nvar), dtype=np.uint8)
    for i, f in enumerate(free):
        kernel[i, f] = 1
        for row, c in zip(sub.rows, piv):
            kernel[i, c] = t.neg[row[f]]
    return c0, kernel


# -- explicit lifts ------------------------------------------------------------


@dataclass
class WordClassTable:
    """Words of length <= L in given lifts, computed exactly in KG."""

    words: list  # tuples of generator indices
    values: np.ndarray  # (N, |G|) codes
    grades: np.ndarray  # -1 for zero
    max_length: int


def word_classes(g: Group, field: FieldSpec, filt: Filtration, lifts, L: int) -> WordClassTable:
    from .algebra import grades_of

    lifts = np.atleast_2d(np.asarray(lifts, dtype=np.uint8))
    d = lifts.shape[0]
    words: list = [(i,) for i in range(d)]
    layer = lifts
    vals = [layer]
    cur = list(words)
    for _ in range(1, L):
        prods = mul_many(g, field, layer, lifts)  # (N, d, n)
        layer = prods.reshape(-1, g.order)
        cur = [w + (i,) for w in cur for i in range(d)]
        words.extend(cur)
        vals.append(layer)
    values = np.concatenate(vals, axis=0)
    return WordClassTable(words=words, values=values, grades=grades_of(filt, values), max_length=L)


def check_necessary(table: WordClassTable, filt: Filtration, m: int) -> Violation | None:
    """N1 and N2 for exact lifts, using the first m layers of the filtration."""
    field = filt.field
    lengths = np.array([len(w) for w in table.words])
    grades = np.where((table.grades >= 0) & (table.grades < m), table.grades, -1)
    ideal_m = filt.power(m)
    for k in range(2, m):
        idx = np.nonzero((grades == k) & (lengths >= 2))[0]
        if len(idx):
            cls = reduce_mod(field, filt.power(k + 1), table.values[idx])
            uniq, inv = np.unique(cls, axis=0, return_inverse=True)
            inv = inv.reshape(-1)
            if len(uniq) > filt.dims[k] or rank(field, uniq) < len(uniq):
                return Violation(k, "N1-dependent", f"{len(uniq)} distinct grade-{k} classes are dependent")
        else:
            uniq, inv = np.zeros((0, 0)), np.zeros(0, dtype=int)
        if k <= table.max_length and len(uniq) < filt.dims[k]:
            return Violation(k, "N1-count", f"only {len(uniq)} grade-{k} classes, dimension {filt.dims[k]}")
        for label in range(len(uniq)):
            members = idx[inv == label]
            if len(members) < 2:
                continue
            red = reduce_mod(field, ideal_m, table.values[members])
            for a in range(1, len(members)):
                if not np.array_equal(red[0], red[a]):
                    return Violation(k, "N2", f"{word_name(table.words[members[0]])} and "
                                              f"{word_name(table.words[members[a]])} share a grade-{k} class "
                                              f"but differ modulo A^{m}")
    return None
