"""The group algebra KG, its augmentation ideal A and the powers A^n.

Algebra elements are uint8 vectors of field codes indexed by group
elements.  The filtration A^1 > A^2 > ... > A^{s+1} = 0 is computed over
the prime field; since A^n(KG) = K (x) A^n(F_p G), the same row-reduced
bases serve every extension K.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import BadTruncation, CharacteristicMismatch, DimensionMismatch
from .field import FieldSpec, field_make
from .linalg import Subspace, rank, reduce_vectors, rref, zero_space
from .pgroup import Group, frattini, subgroup_generated

AlgebraElement = np.ndarray


def _check_len(g: Group, *xs) -> None:
    for x in xs:
        if np.shape(x)[-1] != g.order:
            raise DimensionMismatch(f"vector of length {np.shape(x)[-1]} for a group of order {g.order}")


def basis_vector(g: Group, x: int) -> np.ndarray:
    v = np.zeros(g.order, dtype=np.uint8)
    v[x] = 1
    return v


def one(g: Group) -> np.ndarray:
    return basis_vector(g, 0)


def aug_gen(g: Group, field: FieldSpec, x: int) -> np.ndarray:
    """The element x - 1 (or 1 + x in characteristic 2)."""
    v = np.zeros(g.order, dtype=np.uint8)
    v[0] = field.neg(1)
    v[x] = field.add(int(v[x]), 1)
    return v


def add(field: FieldSpec, x, y) -> np.ndarray:
    return field.tables.add[np.asarray(x), np.asarray(y)]


def sub(field: FieldSpec, x, y) -> np.ndarray:
    t = field.tables
    return t.add[np.asarray(x), t.neg[np.asarray(y)]]


def scale(field: FieldSpec, c: int, x) -> np.ndarray:
    return field.tables.mul[c, np.asarray(x)]


def left_index(g: Group) -> np.ndarray:
    """LI[u, t] = u^-1 t, so (xy)_t = sum_u x_u y_{LI[u, t]}."""
    return _left_index_cached(id(g), g)


_LI_CACHE: dict[int, tuple[Group, np.ndarray]] = {}


def _left_index_cached(key: int, g: Group) -> np.ndarray:
    hit = _LI_CACHE.get(key)
    if hit is not None and hit[0] is g:
        return hit[1]
    li = g.cayley[g.inverse[:, None], np.arange(g.order)[None, :]].astype(np.intp)
    if len(_LI_CACHE) > 64:
        _LI_CACHE.clear()
    _LI_CACHE[key] = (g, li)
    return li


def _conv_prime(X: np.ndarray, Y: np.ndarray, li: np.ndarray, p: int) -> np.ndarray:
    """X (a, n), Y (b, n) integer residues -> (a, b, n) products mod p."""
    Yp = Y[:, li]  # (b, n, n)
    Z = np.matmul(X[None, :, :], Yp)  # (b, a, n)
    return (np.transpose(Z, (1, 0, 2)) % p)


def mul_many(g: Group, field: FieldSpec, X, Y) -> np.ndarray:
    """All products X[i] * Y[j] as an (a, b, |G|) array of codes."""
    X = np.atleast_2d(np.asarray(X, dtype=np.uint8))
    Y = np.atleast_2d(np.asarray(Y, dtype=np.uint8))
    _check_len(g, X, Y)
    li = left_index(g)
    p = field.p
    if field.k == 1:
        return _conv_prime(X.astype(np.int64), Y.astype(np.int64), li, p).astype(np.uint8)
    t = field.tables
    PX, PY = t.to_planes(X), t.to_planes(Y)  # (a, n, k)
    M = field.mul_tensor
    k = field.k
    out = np.zeros((X.shape[0], Y.shape[0], g.order, k), dtype=np.int64)
    for s in range(k):
        for u in range(k):
            if not M[s, u].any():
                continue
            conv = _conv_prime(PX[:, :, s], PY[:, :, u], li, p)
            out += conv[..., None] * M[s, u][None, None, None, :]
    return t.from_planes(out % p)


def alg_mul(g: Group, field: FieldSpec, x, y) -> np.ndarray:
    return mul_many(g, field, x, y)[0, 0]


def alg_prod(g: Group, field: FieldSpec, factors) -> np.ndarray:
    out = one(g)
    for f in factors:
        out = alg_mul(g, field, out, f)
    return out


def right_mul_group(g: Group, x, h: int) -> np.ndarray:
    """x * h for a group element h: a coordinate permutation."""
    idx = g.cayley[:, g.inverse[h]]
    return np.asarray(x)[..., idx]


def augmentation(field: FieldSpec, x) -> int:
    x = np.asarray(x)
    if field.k == 1:
        return int(x.astype(np.int64).sum() % field.p)
    planes = field.tables.to_planes(x).sum(axis=0) % field.p
    return int(planes @ field.tables.weights)


def minimal_generators(g: Group) -> list[int]:
    """pc-generators that remain independent modulo the Frattini subgroup."""
    phi = frattini(g)
    chosen: list[int] = []
    H = set(phi)
    for x in g.gen_elements:
        if x not in H:
            chosen.append(x)
            H = set(subgroup_generated(g, set(phi) | set(chosen)))
        if len(H) == g.order:
            break
    return chosen


@dataclass(frozen=True, eq=False)
class Filtration:
    """layers[i] is A^{i+1}; the last layer is the zero space A^{s+1}."""

    group: Group
    field: FieldSpec
    layers: tuple[Subspace, ...]

    @property
    def s(self) -> int:
        return len(self.layers) - 1

    @property
    def n(self) -> int:
        return self.group.order

    def power(self, n: int) -> Subspace:
        if n <= 0:
            return _whole_space(self.n)
        if n > self.s + 1:
            return self.layers[-1]
        return self.layers[n - 1]

    @cached_property
    def dims(self) -> list[int]:
        """dim A^n / A^{n+1} for n = 0 .. s."""
        full = [self.n] + [layer.dim for layer in self.layers]
        return [full[i] - full[i + 1] for i in range(len(full) - 1)]

    @property
    def layer_dims(self) -> list[int]:
        """dim A^n / A^{n+1} for n = 1 .. s."""
        return self.dims[1:]

    def with_field(self, field: FieldSpec) -> "Filtration":
        if field.p != self.field.p:
            raise CharacteristicMismatch("filtration bases live over the prime field of K")
        return Filtration(self.group, field, self.layers)


@lru_cache(maxsize=8)
def _whole_space(n: int) -> Subspace:
    return Subspace(rows=np.eye(n, dtype=np.uint8), pivots=np.arange(n), n=n)


_FILT_CACHE: dict[tuple[int, int], tuple[Group, tuple[Subspace, ...]]] = {}


def radical_filtration(g: Group, field: FieldSpec) -> Filtration:
    p = field.p
    if g.p != p:
        raise CharacteristicMismatch(f"|{g.name}| = {g.order} is not a power of char K = {p}")
    key = (id(g), p)
    hit = _FILT_CACHE.get(key)
    if hit is not None and hit[0] is g:
        return Filtration(g, field, hit[1])
    fp = field_make(p)
    n = g.order
    a1 = np.zeros((n - 1, n), dtype=np.uint8)
    a1[:, 0] = p - 1
    a1[np.arange(n - 1), np.arange(1, n)] = 1
    layers = [rref(fp, a1)]
    gens = minimal_generators(g)
    shifts = [g.cayley[:, g.inverse[h]] for h in gens]
    while layers[-1].dim:
        rows = layers[-1].rows.astype(np.int64)
        blocks = [(rows[:, idx] - rows) % p for idx in shifts]
        layers.append(rref(fp, np.vstack(blocks).astype(np.uint8)))
    _FILT_CACHE[key] = (g, tuple(layers))
    return Filtration(g, field, tuple(layers))


def reduce_mod(field: FieldSpec, sub: Subspace, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.uint8)
    if x.shape[-1] != sub.n:
        raise DimensionMismatch(f"vector of length {x.shape[-1]} against a subspace of K^{sub.n}")
    return reduce_vectors(field, sub, x)


def in_power(filt: Filtration, x, n: int) -> bool:
    return not reduce_mod(filt.field, filt.power(n), x).any()


def grade_of(filt: Filtration, x) -> float | int:
    x = np.asarray(x, dtype=np.uint8)
    if not x.any():
        return math.inf
    lo = 0
    for n in range(1, filt.s + 1):
        if reduce_mod(filt.field, filt.power(n), x).any():
            return n - 1
        lo = n
    return lo


def grades_of(filt: Filtration, X) -> np.ndarray:
    """Grades of the rows of X; zero rows get -1."""
    X = np.atleast_2d(np.asarray(X, dtype=np.uint8))
    out = np.full(X.shape[0], filt.s, dtype=np.int64)
    out[~X.any(axis=1)] = -1
    undecided = X.any(axis=1)
    for n in range(1, filt.s + 1):
        if not undecided.any():
            break
        red = reduce_mod(filt.field, filt.power(n), X[undecided])
        outside = red.any(axis=1)
        idx = np.nonzero(undecided)[0]
        out[idx[outside]] = n - 1
        undecided[idx[outside]] = False
    return out


def graded_class(filt: Filtration, x) -> tuple[float | int, np.ndarray]:
    gr = grade_of(filt, x)
    x = np.asarray(x, dtype=np.uint8)
    if gr == math.inf:
        return gr, np.zeros_like(x)
    return gr, reduce_mod(filt.field, filt.power(gr + 1), x)


def dimension_subgroup(g: Group, filt: Filtration, n: int) -> frozenset[int]:
    """{h : h - 1 in A^n}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    fp = filt.field
    X = np.zeros((g.order, g.order), dtype=np.uint8)
    X[:, 0] = fp.neg(1)
    X[np.arange(g.order), np.arange(g.order)] = 1
    X[0, 0] = 0
    red = reduce_mod(fp, filt.power(n), X)
    return frozenset(np.nonzero(~red.any(axis=1))[0].tolist())


class QuotientAlgebra:
    """KG / A^m with canonical representatives (reduced modulo A^m)."""

    def __init__(self, g: Group, field: FieldSpec, filt: Filtration, m: int):
        if not (1 <= m <= filt.s + 1):
            raise BadTruncation(f"truncation m={m} outside 1..{filt.s + 1}")
        self.group = g
        self.field = field
        self.filt = filt.with_field(field) if filt.field != field else filt
        self.m = m
        self.ideal = self.filt.power(m)

    @property
    def dim(self) -> int:
        return self.group.order - self.ideal.dim

    def reduce(self, x) -> np.ndarray:
        return reduce_mod(self.field, self.ideal, x)

    def add(self, x, y) -> np.ndarray:
        return self.reduce(add(self.field, x, y))

    def mul(self, x, y) -> np.ndarray:
        return self.reduce(alg_mul(self.group, self.field, x, y))

    def eq(self, x, y) -> bool:
        return not self.reduce(sub(self.field, x, y)).any()

    def is_zero(self, x) -> bool:
        return not self.reduce(x).any()


def quotient_algebra(g: Group, field: FieldSpec, filt: Filtration, m: int) -> QuotientAlgebra:
    return QuotientAlgebra(g, field, filt, m)


def product_in_power_check(filt: Filtration, i: int, j: int, samples: int | None = None, seed: int = 0) -> bool:
    """Spot-check A^i A^j inside A^{i+j} on basis rows."""
    g, field = filt.group, filt.field
    A, B = filt.power(i).rows, filt.power(j).rows
    if not len(A) or not len(B):
        return True
    rng = np.random.default_rng(seed)
    if samples is not None:
        A = A[rng.choice(len(A), size=min(samples, len(A)), replace=False)]
        B = B[rng.choice(len(B), size=min(samples, len(B)), replace=False)]
    prods = mul_many(g, field, A, B).reshape(-1, g.order)
    return not reduce_mod(field, filt.power(i + j), prods).any()


def span_rank(field: FieldSpec, X) -> int:
    return rank(field, np.atleast_2d(np.asarray(X, dtype=np.uint8)))


__all__ = [
    "AlgebraElement", "Filtration", "QuotientAlgebra", "add", "alg_mul", "alg_prod", "aug_gen",
    "augmentation", "basis_vector", "dimension_subgroup", "grade_of", "graded_class", "grades_of",
    "in_power", "minimal_generators", "mul_many", "one", "quotient_algebra", "radical_filtration",
    "reduce_mod", "scale", "sub", "zero_space", "span_rank",
]


def random_of_grade(filt: Filtration, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random element of A^n outside A^{n+1} (n = 0 allowed)."""
    field = filt.field
    rows = filt.power(n).rows
    t = field.tables
    while True:
        c = rng.integers(0, field.q, rows.shape[0]).astype(np.uint8)
        x = np.zeros(filt.n, dtype=np.uint8)
        for ci, r in zip(c, rows):
            if ci:
                x = t.add[x, t.mul[ci, r]]
        if reduce_mod(field, filt.power(n + 1), x).any():
            return x


def grade_population(filt: Filtration, n: int) -> int:
    """Number of elements of exact grade n."""
    q = filt.field.q
    return q ** filt.power(n).dim - q ** filt.power(n + 1).dim
