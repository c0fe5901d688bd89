"""Finite p-groups from power-commutator presentations.

A presentation lists pc-generators g_0, ..., g_{n-1} with relative orders
r_i, power relations g_i^{r_i} = w_i and conjugate relations
(g_j, g_i) = c_ji for j > i, where (x, y) = x^-1 y^-1 x y.  The words
w_i and c_ji only involve generators after g_i.  Every element has the
normal form g_0^e0 ... g_{n-1}^e{n-1} with 0 <= e_i < r_i; element
indices follow the lexicographic order of exponent vectors, so index 0 is
the identity.
"""

from __future__ import annotations

import itertools
import math
import re
import sys
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from .errors import (
    InconsistentPresentation,
    NotPGroup,
    OrderMismatch,
    OrderOverflow,
    ParseError,
    RelationViolation,
)

Word = tuple[tuple[int, int], ...]

MAX_COLLECTION_STEPS = 10**6
MAX_PRODUCT_ORDER = 1024


def invert_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


@dataclass(frozen=True)
class GroupSpec:
    """Power-commutator presentation.

    powerrels[i] is the normal word for g_i^{r_i}; commrels maps (j, i)
    with j > i to the word for (g_j, g_i).  Missing commutators are trivial.
    """

    name: str
    pcgens: tuple[str, ...]
    relorders: tuple[int, ...]
    powerrels: tuple[Word, ...] = ()
    commrels: tuple[tuple[tuple[int, int], Word], ...] = ()
    order: int | None = None

    def __post_init__(self):
        n = len(self.pcgens)
        if len(self.relorders) != n:
            raise ParseError(f"{self.name}: {n} generators but {len(self.relorders)} relative orders")
        if not self.powerrels:
            object.__setattr__(self, "powerrels", tuple(() for _ in range(n)))
        if len(self.powerrels) != n:
            raise ParseError(f"{self.name}: power relation count differs from generator count")
        if len(set(self.pcgens)) != n:
            raise ParseError(f"{self.name}: repeated generator names")
        for i, w in enumerate(self.powerrels):
            if any(g <= i or g >= n for g, _ in w):
                raise ParseError(f"{self.name}: power word of {self.pcgens[i]} must use later generators")
        seen = set()
        for (j, i), w in self.commrels:
            if not (0 <= i < j < n):
                raise ParseError(f"{self.name}: commutator key ({j},{i}) must satisfy j > i")
            if (j, i) in seen:
                raise ParseError(f"{self.name}: commutator ({j},{i}) given twice")
            seen.add((j, i))
            if any(g <= i or g >= n for g, _ in w):
                raise ParseError(f"{self.name}: commutator word for ({j},{i}) must use generators after {i}")

    @property
    def ngens(self) -> int:
        return len(self.pcgens)

    @property
    def declared_order(self) -> int:
        return math.prod(self.relorders)

    def comm(self, j: int, i: int) -> Word:
        for key, w in self.commrels:
            if key == (j, i):
                return w
        return ()

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        return "*".join(self.pcgens[g] if e == 1 else f"{self.pcgens[g]}^{e}" for g, e in w)

    def to_text(self) -> list[str]:
        lines = []
        for i, name in enumerate(self.pcgens):
            lines.append(f"gen {name} order {self.relorders[i]} power {self.word_str(self.powerrels[i])}")
        for (j, i), w in self.commrels:
            if w:
                lines.append(f"comm {self.pcgens[j]} {self.pcgens[i]} {self.word_str(w)}")
        return lines

    def renamed(self, name: str) -> "GroupSpec":
        return replace(self, name=name)


def parse_word(text: str, names: dict[str, int], line: int | None = None) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for tok in text.split("*"):
        tok = tok.strip()
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_']*)(?:\^(-?\d+))?", tok)
        if not m or m.group(1) not in names:
            raise ParseError(f"bad word factor {tok!r}", line)
        out.append((names[m.group(1)], int(m.group(2) or 1)))
    return tuple(out)


def spec_from_text(lines, name: str = "inline", first_line: int = 1) -> GroupSpec:
    """Parse 'gen <name> order <q> power <word>' and 'comm <gj> <gi> <word>' lines."""
    gens: list[tuple[str, int, str, int]] = []
    comms: list[tuple[str, str, str, int]] = []
    for off, raw in enumerate(lines):
        lineno = first_line + off
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        parts = s.split()
        if parts[0] == "name" and len(parts) == 2:
            name = parts[1]
        elif parts[0] == "gen":
            if len(parts) not in (4, 6) or parts[2] != "order" or (len(parts) == 6 and parts[4] != "power"):
                raise ParseError("expected 'gen <name> order <q> power <word>'", lineno)
            try:
                q = int(parts[3])
            except ValueError:
                raise ParseError(f"bad relative order {parts[3]!r}", lineno) from None
            gens.append((parts[1], q, parts[5] if len(parts) == 6 else "1", lineno))
        elif parts[0] == "comm":
            if len(parts) != 4:
                raise ParseError("expected 'comm <gj> <gi> <word>'", lineno)
            comms.append((parts[1], parts[2], parts[3], lineno))
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", lineno)
    if not gens:
        raise ParseError("no generators given", first_line)
    names = {g[0]: i for i, g in enumerate(gens)}
    powers = tuple(parse_word(w, names, ln) for _, _, w, ln in gens)
    commrels = []
    for gj, gi, w, ln in comms:
        if gj not in names or gi not in names:
            raise ParseError(f"unknown generator in commutator ({gj},{gi})", ln)
        j, i = names[gj], names[gi]
        word = parse_word(w, names, ln)
        if j < i:
            # (g_i, g_j) = (g_j, g_i)^-1
            j, i, word = i, j, invert_word(word)
        commrels.append(((j, i), word))
    try:
        return GroupSpec(
            name=name,
            pcgens=tuple(g[0] for g in gens),
            relorders=tuple(g[1] for g in gens),
            powerrels=powers,
            commrels=tuple(commrels),
        )
    except ParseError as exc:
        raise ParseError(str(exc), first_line) from None


class Collector:
    """Collection from the left with memoised generator multiplication."""

    def __init__(self, spec: GroupSpec, max_steps: int = MAX_COLLECTION_STEPS):
        self.spec = spec
        self.n = spec.ngens
        self.r = spec.relorders
        self.comm = {key: w for key, w in spec.commrels}
        self.max_steps = max_steps
        self.steps = 0
        self._cache: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}

    def _tick(self):
        self.steps += 1
        if self.steps > self.max_steps:
            raise InconsistentPresentation(
                f"{self.spec.name}: collection exceeded {self.max_steps} rewriting steps"
            )

    def mul_gen(self, x: tuple[int, ...], i: int) -> tuple[int, ...]:
        key = (x, i)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self._tick()
        e = list(x)
        tail = e[i + 1:]
        e[i + 1:] = [0] * len(tail)
        e[i] += 1
        if e[i] == self.r[i]:
            e[i] = 0
            y = self.mul_word(tuple(e), self.spec.powerrels[i])
        else:
            y = tuple(e)
        # move g_i left past the tail: T g_i = g_i T^{g_i}, g_j^{g_i} = g_j (g_j, g_i)
        for off, ej in enumerate(tail):
            j = i + 1 + off
            c = self.comm.get((j, i), ())
            for _ in range(ej):
                y = self.mul_gen(y, j)
                if c:
                    y = self.mul_word(y, c)
        self._cache[key] = y
        return y

    def mul_inv_gen(self, x: tuple[int, ...], i: int) -> tuple[int, ...]:
        for _ in range(self.r[i] - 1):
            x = self.mul_gen(x, i)
        return self.mul_word(x, invert_word(self.spec.powerrels[i]))

    def mul_word(self, x: tuple[int, ...], w: Word) -> tuple[int, ...]:
        for g, e in w:
            if e >= 0:
                for _ in range(e):
                    x = self.mul_gen(x, g)
            else:
                for _ in range(-e):
                    x = self.mul_inv_gen(x, g)
        return x


def prime_of(order: int) -> int | None:
    """The prime p if order is a power of p (order > 1)."""
    if order < 2:
        return None
    p = next(f for f in range(2, order + 1) if order % f == 0)
    n = order
    while n % p == 0:
        n //= p
    return p if n == 1 else None


@dataclass(frozen=True, eq=False)
class Group:
    spec: GroupSpec
    order: int
    elements: np.ndarray  # (order, ngens) exponent vectors
    cayley: np.ndarray  # (order, order) int32
    inverse: np.ndarray  # (order,)
    gen_elements: tuple[int, ...] = field(default=())

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def p(self) -> int | None:
        return prime_of(self.order)

    def mul(self, x: int, y: int) -> int:
        return int(self.cayley[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def power(self, x: int, e: int) -> int:
        y = 0
        for _ in range(e % self.element_order(x) if e < 0 else e):
            y = int(self.cayley[y, x])
        return y

    def element_order(self, x: int) -> int:
        y, k = x, 1
        while y != 0:
            y = int(self.cayley[y, x])
            k += 1
        return k

    @cached_property
    def orders(self) -> np.ndarray:
        out = np.ones(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        done = cur == 0
        k = 1
        while not done.all():
            k += 1
            cur = self.cayley[cur, np.arange(self.order)]
            newly = (cur == 0) & ~done
            out[newly] = k
            done |= newly
        out[0] = 1
        return out

    def index_of(self, exps) -> int:
        idx = 0
        for e, r in zip(exps, self.spec.relorders):
            idx = idx * r + int(e) % r
        return idx

    def gen(self, name: str) -> int:
        return self.gen_elements[self.spec.pcgens.index(name)]

    def eval_word(self, w: Word) -> int:
        x = 0
        for g, e in w:
            y = self.gen_elements[g]
            x = self.mul(x, self.power(y, e) if e >= 0 else self.power(self.inv(y), -e))
        return x

    def parse(self, text: str) -> int:
        names = {n: i for i, n in enumerate(self.spec.pcgens)}
        return self.eval_word(parse_word(text, names))

    def label(self, x: int) -> str:
        parts = []
        for name, e in zip(self.spec.pcgens, self.elements[x]):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{int(e)}")
        return "*".join(parts) if parts else "1"

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.cayley == self.cayley.T).all())

    @cached_property
    def commutator_table(self) -> np.ndarray:
        inv = self.inverse
        T = self.cayley
        left = T[inv[:, None], inv[None, :]]
        return T[left, T]


def _enumerate_elements(relorders) -> np.ndarray:
    if not relorders:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(*[range(r) for r in relorders])), dtype=np.int64).reshape(
        -1, len(relorders)
    )


def _check_axioms(name: str, T: np.ndarray, gens: tuple[int, ...]) -> None:
    n = T.shape[0]
    ar = np.arange(n)
    if not ((T[0] == ar).all() and (T[:, 0] == ar).all()):
        raise OrderMismatch(f"{name}: element 0 is not a two-sided identity")
    srt = np.sort(T, axis=1)
    if not ((srt == ar).all() and (np.sort(T, axis=0) == ar[:, None]).all()):
        raise OrderMismatch(f"{name}: multiplication table is not a Latin square")
    if n <= 64:
        lhs = T[T[:, :, None], ar[None, None, :]]
        rhs = T[ar[:, None, None], T[None, :, :]]
        ok = (lhs == rhs).all()
    else:
        ok = True
        for g in gens:
            if not (T[T, g] == T[:, T[:, g]]).all():
                ok = False
                break
    if not ok:
        raise OrderMismatch(
            f"{name}: multiplication is not associative; the presentation defines a group "
            f"smaller than the declared order {n}"
        )


def group_from_spec(spec: GroupSpec, max_steps: int = MAX_COLLECTION_STEPS) -> Group:
    if spec.order is not None and spec.order != spec.declared_order:
        raise OrderMismatch(f"{spec.name}: relative orders give {spec.declared_order}, declared {spec.order}")
    elements = _enumerate_elements(spec.relorders)
    order = elements.shape[0]
    col = Collector(spec, max_steps)
    radix = np.array([math.prod(spec.relorders[i + 1:]) for i in range(spec.ngens)], dtype=np.int64)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        right = np.empty((spec.ngens, order), dtype=np.int64)
        for k in range(spec.ngens):
            for x in range(order):
                right[k, x] = int(np.dot(col.mul_gen(tuple(int(v) for v in elements[x]), k), radix))
    finally:
        sys.setrecursionlimit(limit)
    T = np.empty((order, order), dtype=np.int32)
    T[:, 0] = np.arange(order)
    for y in range(1, order):
        e = elements[y]
        k = int(np.nonzero(e)[0][-1])
        prev = y - int(radix[k])
        T[:, y] = right[k][T[:, prev]]
    gen_elements = tuple(int(radix[k]) for k in range(spec.ngens))
    _check_axioms(spec.name, T, gen_elements)
    inverse = np.argmin(T, axis=1).astype(np.int64)
    g = Group(spec=spec, order=order, elements=elements, cayley=T, inverse=inverse, gen_elements=gen_elements)
    _check_relations(g)
    return g


def _check_relations(g: Group) -> None:
    spec = g.spec
    for i, w in enumerate(spec.powerrels):
        lhs = g.power(g.gen_elements[i], spec.relorders[i])
        if lhs != g.eval_word(w):
            raise RelationViolation(f"{spec.name}: power relation of {spec.pcgens[i]} fails")
    for j in range(spec.ngens):
        for i in range(j):
            lhs = commutator(g, g.gen_elements[j], g.gen_elements[i])
            if lhs != g.eval_word(spec.comm(j, i)):
                raise RelationViolation(
                    f"{spec.name}: commutator ({spec.pcgens[j]},{spec.pcgens[i]}) fails"
                )


def commutator(g: Group, x: int, y: int) -> int:
    """(x, y) = x^-1 y^-1 x y."""
    T = g.cayley
    return int(T[T[g.inverse[x], g.inverse[y]], T[x, y]])


_FRESH = "abcdefghjkmnpqrstuvwxyz"


def _product_spec(s1: GroupSpec, s2: GroupSpec, name: str) -> GroupSpec:
    n1 = s1.ngens
    used = set(s1.pcgens)
    names2 = []
    for nm in s2.pcgens:
        if nm in used:
            nm = next(c for c in _FRESH if c not in used and c not in s2.pcgens)
        used.add(nm)
        names2.append(nm)

    def shift(w: Word) -> Word:
        return tuple((g + n1, e) for g, e in w)

    return GroupSpec(
        name=name,
        pcgens=s1.pcgens + tuple(names2),
        relorders=s1.relorders + s2.relorders,
        powerrels=s1.powerrels + tuple(shift(w) for w in s2.powerrels),
        commrels=s1.commrels + tuple(((j + n1, i + n1), shift(w)) for (j, i), w in s2.commrels),
    )


def direct_product(g1: Group, g2: Group, name: str | None = None, max_order: int = MAX_PRODUCT_ORDER) -> Group:
    """Componentwise product; element (x, y) has index x*|G2| + y."""
    order = g1.order * g2.order
    if order > max_order:
        raise OrderOverflow(f"product order {order} exceeds {max_order}")
    name = name or f"{g1.name} x {g2.name}"
    spec = _product_spec(g1.spec, g2.spec, name)
    n2 = g2.order
    T = (g1.cayley[:, None, :, None].astype(np.int64) * n2 + g2.cayley[None, :, None, :]).reshape(order, order)
    inverse = (g1.inverse[:, None] * n2 + g2.inverse[None, :]).reshape(order)
    elements = np.hstack(
        [np.repeat(g1.elements, n2, axis=0), np.tile(g2.elements, (g1.order, 1))]
    )
    gens = tuple(x * n2 for x in g1.gen_elements) + tuple(g2.gen_elements)
    return Group(spec=spec, order=order, elements=elements, cayley=T.astype(np.int32),
                 inverse=inverse.astype(np.int64), gen_elements=gens)


def subgroup_generated(g: Group, seeds) -> frozenset[int]:
    seeds = sorted({int(s) for s in seeds})
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    frontier = np.array([0])
    if not seeds:
        return frozenset([0])
    sv = np.array(seeds)
    while frontier.size:
        nxt = g.cayley[frontier[:, None], sv[None, :]].ravel()
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return frozenset(np.nonzero(mask)[0].tolist())


def power_map(g: Group, e: int) -> np.ndarray:
    out = np.zeros(g.order, dtype=np.int64)
    ar = np.arange(g.order)
    for _ in range(e):
        out = g.cayley[out, ar]
    return out


@dataclass(frozen=True)
class SubgroupChain:
    terms: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i: int) -> frozenset[int]:
        return self.terms[i]

    def term(self, i: int) -> frozenset[int]:
        """M_i with 1-based indexing; {1} beyond the end."""
        if i - 1 < len(self.terms):
            return self.terms[i - 1]
        return frozenset([0])


def _require_p(g: Group, p: int) -> None:
    if g.order > 1 and prime_of(g.order) != p:
        raise NotPGroup(f"{g.name} of order {g.order} is not a {p}-group")


def lazard_series(g: Group, p: int) -> SubgroupChain:
    """M_1 = G, M_i = <(M_{i-1}, G), M_{ceil(i/p)}^p>, down to {1}."""
    _require_p(g, p)
    C = g.commutator_table
    pw = power_map(g, p)
    terms = [frozenset(range(g.order))]
    i = 2
    while len(terms[-1]) > 1:
        prev = np.array(sorted(terms[-1]))
        comms = np.unique(C[prev])
        src = np.array(sorted(terms[-(-i // p) - 1]))
        seeds = set(comms.tolist()) | set(pw[src].tolist())
        seeds.discard(0)
        terms.append(subgroup_generated(g, seeds))
        i += 1
    return SubgroupChain(tuple(terms))


def is_powerful(g: Group, p: int) -> bool:
    """p = 2: G/G^4 abelian; p odd: G/G^p abelian."""
    _require_p(g, p)
    e = 4 if p == 2 else p
    N = subgroup_generated(g, set(power_map(g, e).tolist()) - {0})
    mask = np.zeros(g.order, dtype=bool)
    mask[list(N)] = True
    return bool(mask[g.commutator_table].all())


def frattini(g: Group) -> frozenset[int]:
    """Phi(G) = G' G^p for a p-group."""
    p = g.p
    seeds = set(np.unique(g.commutator_table).tolist()) | set(power_map(g, p).tolist())
    seeds.discard(0)
    return subgroup_generated(g, seeds)
