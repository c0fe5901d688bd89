"""Arithmetic in small finite fields GF(p^k).

Elements are stored as integer codes: the polynomial c0 + c1 x + ... is
encoded as c0 + c1 p + c2 p^2 + ...  Code 0 is zero and code 1 is one.
All arithmetic goes through precomputed uint8 tables, which also makes
vectorised numpy work over K cheap.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .errors import DegreeMismatch, DivisionByZero, NotPrime, ReducibleModulus

FieldElem = int


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by monic b over GF(p); ascending coefficient lists."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[i + shift] = (a[i + shift] - c * bi) % p
        a.pop()
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    k = len(poly) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            rem = _poly_rem(poly, list(low) + [1], p)
            if not any(rem):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k."""
    for low in itertools.product(range(p), repeat=k):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ReducibleModulus(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...] = dc_field(default=())

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def __str__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # -- encoding -------------------------------------------------------
    def coeffs(self, x: FieldElem) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def from_coeffs(self, cs) -> FieldElem:
        cs = list(cs)
        if len(cs) > self.k:
            raise DegreeMismatch(f"{len(cs)} coefficients for a degree-{self.k} field")
        code = 0
        for c in reversed(cs):
            code = code * self.p + (int(c) % self.p)
        return code

    # -- tables -----------------------------------------------------------
    @cached_property
    def _mul_tensor(self) -> np.ndarray:
        """M[s, t, :] = coefficients of x^s * x^t reduced by the modulus."""
        k, p = self.k, self.p
        M = np.zeros((k, k, k), dtype=np.int64)
        for s in range(k):
            for t in range(k):
                poly = [0] * (s + t + 1)
                poly[s + t] = 1
                rem = _poly_rem(poly, list(self.modulus), p)
                rem = rem + [0] * (k - len(rem))
                M[s, t, :] = rem[:k]
        return M

    @property
    def mul_tensor(self) -> np.ndarray:
        return self._mul_tensor

    @cached_property
    def tables(self) -> "FieldTables":
        q, p, k = self.q, self.p, self.k
        digits = np.array([self.coeffs(x) for x in range(q)], dtype=np.int64).reshape(q, k)
        weights = p ** np.arange(k, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        prod = np.einsum("as,bt,stc->abc", digits, digits, self._mul_tensor) % p
        mul = prod @ weights
        neg = ((-digits) % p) @ weights
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            hits = np.nonzero(mul[x] == 1)[0]
            inv[x] = hits[0]
        return FieldTables(
            add=add.astype(np.uint8),
            mul=mul.astype(np.uint8),
            neg=neg.astype(np.uint8),
            inv=inv.astype(np.uint8),
            digits=digits.astype(np.uint8),
            weights=weights,
        )

    # -- convenience --------------------------------------------------------
    def add(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return int(self.tables.add[x, y])

    def sub(self, x: FieldElem, y: FieldElem) -> FieldElem:
        t = self.tables
        return int(t.add[x, t.neg[y]])

    def mul(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return int(self.tables.mul[x, y])

    def neg(self, x: FieldElem) -> FieldElem:
        return int(self.tables.neg[x])

    def inv(self, x: FieldElem) -> FieldElem:
        if x % self.q == 0:
            raise DivisionByZero(f"inverse of zero in {self}")
        return int(self.tables.inv[x])

    def elements(self) -> range:
        return range(self.q)

    def from_int(self, n: int) -> FieldElem:
        """Image of an integer under Z -> K."""
        return n % self.p

    def token(self, x: FieldElem) -> str:
        return str(int(x))

    def header(self) -> str:
        mod = ",".join(str(c) for c in self.modulus)
        return f"field p={self.p} k={self.k} modulus={mod}"


@dataclass(frozen=True)
class FieldTables:
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    digits: np.ndarray
    weights: np.ndarray

    def to_planes(self, x: np.ndarray) -> np.ndarray:
        """Codes (...,) -> coefficient planes (..., k) as int64."""
        return self.digits[np.asarray(x)].astype(np.int64)

    def from_planes(self, planes: np.ndarray) -> np.ndarray:
        return (planes @ self.weights).astype(np.uint8)


_FIELD_CACHE: dict[tuple, FieldSpec] = {}


def field_make(p: int, k: int = 1, modulus=None) -> FieldSpec:
    """Validated field spec; identical inputs return the identical object."""
    key = (p, k, None if modulus is None else tuple(modulus))
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {k}")
    if modulus is None:
        mod = default_modulus(p, k)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != k + 1:
            raise DegreeMismatch(f"modulus {list(modulus)} has degree {len(mod) - 1}, expected {k}")
        if mod[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if not is_irreducible(list(mod), p):
            raise ReducibleModulus(f"{list(mod)} is reducible over GF({p})")
    spec = FieldSpec(p, k, mod)
    _FIELD_CACHE[key] = spec
    return spec


def field_arith(spec: FieldSpec, op: str, x: FieldElem, y: FieldElem | None = None) -> FieldElem:
    if op == "add":
        return spec.add(x, y)
    if op == "sub":
        return spec.sub(x, y)
    if op == "mul":
        return spec.mul(x, y)
    if op == "neg":
        return spec.neg(x)
    if op == "inv":
        return spec.inv(x)
    raise ValueError(f"unknown field operation {op!r}")


def has_primitive_cube_root(spec: FieldSpec) -> tuple[bool, FieldElem | None]:
    """Whether K contains omega != 1 with omega^3 = 1; returns the smallest such code."""
    if (spec.q - 1) % 3 != 0:
        return False, None
    for w in range(2, spec.q):
        if spec.mul(spec.mul(w, w), w) == 1:
            return True, w
    return False, None


def parse_field(text: str) -> FieldSpec:
    """Parse 'p=2,k=2', 'p=3', 'p=2 k=2 modulus=1,1,1' or 'GF(4)'."""
    s = text.strip()
    if s.upper().startswith("GF(") and s.endswith(")"):
        inner = s[3:-1]
        if "^" in inner:
            base, exp = inner.split("^")
            return field_make(int(base), int(exp))
        q = int(inner)
        p = next(f for f in range(2, q + 1) if q % f == 0)
        k = round(math.log(q, p))
        if p ** k != q:
            raise NotPrime(f"{q} is not a prime power")
        return field_make(p, k)
    parts: dict[str, str] = {}
    for tok in re.split(r"[\s,;]+(?=(?:p|k|modulus)\s*=)", s):
        if "=" not in tok:
            raise ValueError(f"cannot parse field token {tok!r}")
        key, val = tok.split("=", 1)
        parts[key.strip()] = val.strip().strip(",")
    if "p" not in parts:
        raise ValueError(f"field description {text!r} lacks p=")
    modulus = None
    if "modulus" in parts:
        modulus = [int(c) for c in parts["modulus"].split(",") if c]
    return field_make(int(parts["p"]), int(parts.get("k", 1)), modulus)
