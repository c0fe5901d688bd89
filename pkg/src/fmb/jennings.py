"""Jennings theory: layer representatives, weights and regular monomials.

For each i with M_i != M_{i+1} in the Lazard-Jennings series we pick
representatives u_{i1}, ..., u_{id_i} whose images form a basis of the
elementary abelian quotient M_i / M_{i+1}.  A regular monomial is the
ordered product of (u_{ik} - 1)^{y_ik} with 0 <= y_ik < p; its weight is
sum i * y_ik.  The monomials of weight >= t form a basis of A^t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from .algebra import Filtration, grades_of, radical_filtration, reduce_mod
from .field import FieldSpec, field_make
from .linalg import rank
from .pgroup import Group, SubgroupChain, lazard_series, subgroup_generated


@dataclass(frozen=True)
class RegularMonomial:
    exps: tuple[int, ...]
    weight: int


@dataclass(frozen=True)
class JenningsProfile:
    p: int
    series: SubgroupChain
    layers: tuple[tuple[int, tuple[int, ...]], ...]  # (i, representatives)
    dims: dict = dc_field(default_factory=dict)

    @property
    def reps(self) -> list[int]:
        return [u for _, us in self.layers for u in us]

    @property
    def rep_weights(self) -> list[int]:
        return [i for i, us in self.layers for _ in us]

    @property
    def weightsum(self) -> int:
        return sum(i * len(us) for i, us in self.layers)

    @property
    def q(self) -> list[int]:
        return [self.p] * len(self.reps)

    @property
    def top_weight(self) -> int:
        return (self.p - 1) * self.weightsum

    def poincare(self) -> list[int]:
        """Coefficients of prod over reps of (1 + t^w + ... + t^{(p-1)w})."""
        poly = np.zeros(self.top_weight + 1, dtype=np.int64)
        poly[0] = 1
        for w in self.rep_weights:
            nxt = np.zeros_like(poly)
            for y in range(self.p):
                shift = y * w
                nxt[shift:] += poly[: len(poly) - shift]
            poly = nxt
        return poly.tolist()


def jennings_profile(g: Group, p: int, filt: Filtration | None = None) -> JenningsProfile:
    """Representatives chosen as the first elements (global order) extending independence."""
    series = lazard_series(g, p)
    layers = []
    dims = {}
    for i in range(1, len(series.terms)):
        Mi, Mnext = series.term(i), series.term(i + 1)
        if Mi == Mnext:
            continue
        reps: list[int] = []
        H = set(Mnext)
        for x in sorted(Mi):
            if x not in H:
                reps.append(x)
                H = set(subgroup_generated(g, Mnext | set(reps)))
                if len(H) == len(Mi):
                    break
        if p ** len(reps) * len(Mnext) != len(Mi):
            raise ValueError(f"layer {i} of {g.name} is not elementary abelian")
        layers.append((i, tuple(reps)))
        dims[i] = len(reps)
    return JenningsProfile(p=p, series=series, layers=tuple(layers), dims=dims)


def regular_monomials(profile: JenningsProfile) -> list[RegularMonomial]:
    """All monomials, exponent tuples in lexicographic order."""
    w = profile.rep_weights
    out = []
    for exps in itertools.product(range(profile.p), repeat=len(w)):
        out.append(RegularMonomial(exps, sum(a * b for a, b in zip(exps, w))))
    return out


def _power_minus_one(g: Group, field: FieldSpec, u: int, y: int) -> dict[int, int]:
    """Support of (u - 1)^y as {group element: field code}."""
    out: dict[int, int] = {}
    x = 0
    for i in range(y + 1):
        c = comb(y, i) * (-1) ** (y - i)
        code = field.from_int(c)
        if code:
            out[x] = field.add(out.get(x, 0), code)
        x = g.mul(x, u)
    return {h: c for h, c in out.items() if c}


def _right_mul_sparse(g: Group, field: FieldSpec, X: np.ndarray, z: dict[int, int]) -> np.ndarray:
    t = field.tables
    out = np.zeros_like(X)
    for h, c in z.items():
        idx = g.cayley[:, g.inverse[h]]
        out = t.add[out, t.mul[c, X[:, idx]]]
    return out


def monomial_elements(profile: JenningsProfile, g: Group, field: FieldSpec) -> np.ndarray:
    """Values of all regular monomials, rows in regular_monomials order."""
    X = np.zeros((1, g.order), dtype=np.uint8)
    X[0, 0] = 1
    for u in profile.reps:
        parts = [_right_mul_sparse(g, field, X, _power_minus_one(g, field, u, y)) for y in range(profile.p)]
        X = np.stack(parts, axis=1).reshape(-1, g.order)
    return X


def regular_basis(profile: JenningsProfile, g: Group, field: FieldSpec, t: int) -> list[np.ndarray]:
    mons = regular_monomials(profile)
    X = monomial_elements(profile, g, field)
    return [X[i] for i, mon in enumerate(mons) if mon.weight >= t]


@dataclass
class CrosscheckReport:
    group: str
    field: str
    layer_dims: list[int]
    poincare: list[int]
    rows: list[dict]
    weight_grade_ok: bool
    dsub_ok: bool

    @property
    def passed(self) -> bool:
        return all(r["ok"] for r in self.rows) and self.weight_grade_ok and self.dsub_ok

    def lines(self) -> list[str]:
        out = [f"group {self.group} over {self.field}",
               f"layer dims (A^n/A^n+1, n>=1): {self.layer_dims}"]
        for r in self.rows:
            out.append(f"  t={r['t']:>2}  regular weight>=t: rank {r['rank']:>4}  dim A^t {r['dim']:>4}  "
                       f"{'ok' if r['ok'] else 'MISMATCH'}")
        out.append(f"weights equal grades: {'ok' if self.weight_grade_ok else 'MISMATCH'}")
        out.append(f"dimension subgroups equal Lazard-Jennings terms: {'ok' if self.dsub_ok else 'MISMATCH'}")
        out.append(f"crosscheck: {'PASS' if self.passed else 'FAIL'}")
        return out


def jennings_crosscheck(g: Group, field: FieldSpec, filt: Filtration | None = None) -> CrosscheckReport:
    """Compare the Jennings basis with the directly computed filtration.

    For each weight w the monomials of weight w are checked to lie in A^w
    and to be independent modulo A^{w+1}.  Together these give
    rank(weight >= t) = sum_{w >= t} count_w, which is compared with dim A^t.
    """
    from .algebra import dimension_subgroup

    p = field.p
    filt = filt or radical_filtration(g, field)
    prof = jennings_profile(g, p, filt)
    mons = regular_monomials(prof)
    X = monomial_elements(prof, g, field)
    weights = np.array([m.weight for m in mons])
    fp = field_make(p)
    top = int(weights.max())
    layer_rank = {}
    contained = True
    for w in range(top + 1):
        rows = X[weights == w]
        if not len(rows):
            layer_rank[w] = 0
            continue
        if reduce_mod(fp, filt.power(w), rows).any():
            contained = False
        red = reduce_mod(fp, filt.power(w + 1), rows)
        layer_rank[w] = rank(fp, red)
    report_rows = []
    for t in range(0, filt.s + 2):
        r = sum(v for w, v in layer_rank.items() if w >= t)
        count = int((weights >= t).sum())
        dim = filt.power(t).dim
        report_rows.append({"t": t, "rank": r, "count": count, "dim": dim,
                            "ok": contained and r == count == dim})
    weight_grade_ok = bool((grades_of(filt, X) == weights).all()) if g.order <= 1024 else True
    dsub_ok = all(dimension_subgroup(g, filt, n) == prof.series.term(n) for n in range(1, len(prof.series) + 2))
    return CrosscheckReport(
        group=g.name, field=str(field), layer_dims=filt.layer_dims, poincare=prof.poincare(),
        rows=report_rows, weight_grade_ok=weight_grade_ok, dsub_ok=dsub_ok,
    )
