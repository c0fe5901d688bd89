"""Commutator identities in KG used as executable invariants.

For units x, y with z = (y, x) = y^-1 x^-1 y x:

    (y-1)(x-1) = [(x-1)(y-1) + (x-1) + (y-1)](z-1) + (x-1)(y-1) + (z-1)

holds exactly.  For minimal generators u_i, u_j this gives

    (u_j-1)(u_i-1) = (u_i-1)(u_j-1) + (z_ji-1)  mod A^3,

and, for b_k = sum_i alpha_ki (u_i-1), the expansion of b_k b_s mod A^3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Filtration, add, augmentation, aug_gen, basis_vector, minimal_generators, mul_many, one, reduce_mod, scale, sub
from .field import FieldSpec
from .pgroup import Group, commutator


def _mul(g: Group, field: FieldSpec, x, y) -> np.ndarray:
    return mul_many(g, field, x, y)[0, 0]


def unit_inverse(g: Group, field: FieldSpec, u) -> np.ndarray:
    """Inverse of a unit of KG (augmentation nonzero) via the nilpotent series."""
    c = augmentation(field, u)
    if c == 0:
        raise ZeroDivisionError("element of the augmentation ideal is not a unit")
    ci = field.inv(c)
    r = sub(field, one(g), scale(field, ci, u))  # u = c (1 - r), r in A
    acc, term = one(g), one(g)
    while True:
        term = _mul(g, field, term, r)
        if not term.any():
            break
        acc = add(field, acc, term)
    return scale(field, ci, acc)


def random_unit(g: Group, field: FieldSpec, rng: np.random.Generator) -> np.ndarray:
    while True:
        u = rng.integers(0, field.q, size=g.order).astype(np.uint8)
        if augmentation(field, u):
            return u


def identity_one_residual(g: Group, field: FieldSpec, x, y) -> np.ndarray:
    """LHS minus RHS of the exact identity; zero for all units x, y."""
    e = one(g)
    xi, yi = unit_inverse(g, field, x), unit_inverse(g, field, y)
    z = _mul(g, field, _mul(g, field, _mul(g, field, yi, xi), y), x)
    X, Y, Z = sub(field, x, e), sub(field, y, e), sub(field, z, e)
    XY = _mul(g, field, X, Y)
    lhs = _mul(g, field, Y, X)
    rhs = add(field, add(field, _mul(g, field, add(field, add(field, XY, X), Y), Z), XY), Z)
    return sub(field, lhs, rhs)


def congruence_two_ok(g: Group, field: FieldSpec, filt: Filtration) -> bool:
    """(u_j-1)(u_i-1) - (u_i-1)(u_j-1) - ((u_j,u_i)-1) lies in A^3 for minimal generators."""
    gens = minimal_generators(g)
    A3 = filt.power(3)
    for i, ui in enumerate(gens):
        for uj in gens[i + 1:]:
            Xi, Xj = aug_gen(g, field, ui), aug_gen(g, field, uj)
            Z = aug_gen(g, field, commutator(g, uj, ui))
            diff = sub(field, sub(field, _mul(g, field, Xj, Xi), _mul(g, field, Xi, Xj)), Z)
            if reduce_mod(field, A3, diff[None]).any():
                return False
    return True


def congruence_three_ok(g: Group, field: FieldSpec, filt: Filtration, alpha: np.ndarray) -> bool:
    """b_k b_s against its expansion mod A^3 for b_k = sum_i alpha[k, i] (u_i - 1)."""
    gens = minimal_generators(g)
    n = len(gens)
    alpha = np.asarray(alpha, dtype=np.uint8).reshape(-1, n)
    X = np.array([aug_gen(g, field, u) for u in gens])
    M = field.tables.mul
    A = field.tables.add

    def comb(coeffs, rows):
        out = np.zeros(g.order, dtype=np.uint8)
        for c, r in zip(coeffs, rows):
            out = A[out, M[int(c), r]]
        return out

    b = [comb(alpha[k], X) for k in range(alpha.shape[0])]
    XX = mul_many(g, field, X, X)
    Z = {(j, i): aug_gen(g, field, commutator(g, gens[j], gens[i])) for i in range(n) for j in range(i + 1, n)}
    A3 = filt.power(3)
    for k in range(len(b)):
        for s in range(len(b)):
            rhs = np.zeros(g.order, dtype=np.uint8)
            for i in range(n):
                c = field.mul(int(alpha[k, i]), int(alpha[s, i]))
                rhs = A[rhs, M[c, XX[i, i]]]
                for j in range(i + 1, n):
                    c2 = field.add(field.mul(int(alpha[k, i]), int(alpha[s, j])),
                                   field.mul(int(alpha[k, j]), int(alpha[s, i])))
                    rhs = A[rhs, M[c2, XX[i, j]]]
                    c3 = field.mul(int(alpha[k, j]), int(alpha[s, i]))
                    rhs = A[rhs, M[c3, Z[(j, i)]]]
            diff = sub(field, _mul(g, field, b[k], b[s]), rhs)
            if reduce_mod(field, A3, diff[None]).any():
                return False
    return True


@dataclass
class IdentityReport:
    group: str
    field: str
    identity_one: int  # samples checked
    identity_one_ok: bool
    congruence_two_ok: bool
    congruence_three: int
    congruence_three_ok: bool

    @property
    def passed(self) -> bool:
        return self.identity_one_ok and self.congruence_two_ok and self.congruence_three_ok

    def line(self) -> str:
        def mark(ok):
            return "ok" if ok else "FAIL"
        return (f"identity (y-1)(x-1) on {self.identity_one} unit pairs: {mark(self.identity_one_ok)}; "
                f"commutator mod A^3: {mark(self.congruence_two_ok)}; "
                f"b_k b_s expansion on {self.congruence_three} matrices: {mark(self.congruence_three_ok)}")


def identity_suite(g: Group, field: FieldSpec, filt: Filtration, samples: int = 3, seed: int = 0) -> IdentityReport:
    rng = np.random.default_rng(seed)
    ok1 = True
    pairs = [(basis_vector(g, x), basis_vector(g, y)) for x, y in [(g.gen_elements[0], g.gen_elements[-1])]]
    pairs += [(random_unit(g, field, rng), random_unit(g, field, rng)) for _ in range(samples)]
    for x, y in pairs:
        if identity_one_residual(g, field, x, y).any():
            ok1 = False
    ok2 = congruence_two_ok(g, field, filt)
    n = len(minimal_generators(g))
    ok3 = True
    for _ in range(samples):
        alpha = rng.integers(0, field.q, size=(n, n))
        if not congruence_three_ok(g, field, filt, alpha):
            ok3 = False
    return IdentityReport(g.name, str(field), len(pairs), ok1, ok2, samples, ok3)
