"""Checker for filtered multiplicative bases.

A candidate B of |G| elements of KG is accepted when
  - B is a K-basis of KG,
  - every product uv (u, v in B) is 0 or lies in B (exact equality),
  - 1 is in B and the remaining elements lie in A, and
  - for every n the elements of B lying in A^n number dim A^n.
When char K does not divide |G| the radical is zero and only the first
two conditions apply.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import Filtration, grades_of, mul_many, radical_filtration, reduce_mod
from .errors import DimensionMismatch
from .field import FieldSpec
from .linalg import rank
from .pgroup import Group


@dataclass
class BasisCandidate:
    elements: np.ndarray  # (|G|, |G|) field codes, one element per row
    source: str = ""
    field: FieldSpec | None = None

    def __post_init__(self):
        self.elements = np.atleast_2d(np.asarray(self.elements, dtype=np.uint8))

    def __len__(self) -> int:
        return int(self.elements.shape[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BasisCandidate):
            return NotImplemented
        return self.elements.shape == other.elements.shape and bool((self.elements == other.elements).all())

    def sorted(self) -> "BasisCandidate":
        """Same set with the identity first and the rest in lexicographic order."""
        rows = sorted(range(len(self)), key=lambda i: (not _is_one(self.elements[i]), self.elements[i].tobytes()))
        return BasisCandidate(self.elements[rows], self.source, self.field)


def _is_one(v: np.ndarray) -> bool:
    return v[0] == 1 and not v[1:].any()


@dataclass
class VerifyReport:
    is_basis: bool
    count_ok: bool
    distinct_ok: bool
    rank_ok: bool
    closure_failures: list[tuple[int, int]]
    identity_ok: bool
    radical_ok: bool
    radical_layer_ok: dict[int, bool]
    property_ii_ok: bool
    grades: list
    histogram: dict[int, int]
    layer_dims: list[int]
    notes: list[str] = dc_field(default_factory=list)

    def lines(self) -> list[str]:
        out = [
            f"elements: {'ok' if self.count_ok else 'wrong count'}; distinct: {'ok' if self.distinct_ok else 'NO'}",
            f"rank: {'full' if self.rank_ok else 'DEFICIENT'}",
            f"closure: {'ok' if not self.closure_failures else f'{len(self.closure_failures)} failing pairs'}",
        ]
        if self.closure_failures:
            shown = ", ".join(f"({i},{j})" for i, j in self.closure_failures[:10])
            out.append(f"  first failures: {shown}")
        out.append(f"identity present: {'ok' if self.identity_ok else 'NO'}; others in A: {'ok' if self.radical_ok else 'NO'}")
        bad = [n for n, ok in self.radical_layer_ok.items() if not ok]
        out.append(f"B meets each A^n in dim A^n elements: {'ok' if not bad else f'fails at n={bad}'}")
        out.append(f"distinct elements never congruent mod A^k: {'ok' if self.property_ii_ok else 'NO'}")
        out.append("grade histogram: " + ", ".join(f"{k}:{v}" for k, v in sorted(self.histogram.items())))
        out.extend(self.notes)
        out.append(f"verdict: {'BASIS' if self.is_basis else 'NOT A BASIS'}")
        return out


def closure_failures(g: Group, field: FieldSpec, B: np.ndarray) -> list[tuple[int, int]]:
    """Pairs (i, j) whose product is neither 0 nor an element of B."""
    keys = {row.tobytes() for row in B}
    prods = mul_many(g, field, B, B)
    out = []
    nz = prods.any(axis=2)
    for i, j in zip(*np.nonzero(nz)):
        if prods[i, j].tobytes() not in keys:
            out.append((int(i), int(j)))
    return out


def _property_ii(filt: Filtration, B: np.ndarray, grades: np.ndarray) -> bool:
    """For each k, elements outside A^k have pairwise distinct images mod A^k."""
    field = filt.field
    for k in range(1, filt.s + 2):
        idx = np.nonzero((grades < k) & (grades >= 0))[0]
        if len(idx) < 2:
            continue
        red = reduce_mod(field, filt.power(k), B[idx])
        if len({r.tobytes() for r in red}) != len(idx):
            return False
    return True


def verify_fm_basis(g: Group, field: FieldSpec, filt: Filtration | None, cand: BasisCandidate) -> VerifyReport:
    B = cand.elements
    n = g.order
    if B.shape[1] != n:
        raise DimensionMismatch(f"candidate vectors have length {B.shape[1]}, group order is {n}")
    modular = g.p == field.p
    if modular and filt is None:
        filt = radical_filtration(g, field)
    if filt is not None and filt.field != field:
        filt = filt.with_field(field)
    count_ok = B.shape[0] == n
    distinct_ok = len({r.tobytes() for r in B}) == B.shape[0]
    rank_ok = count_ok and rank(field, B) == n
    fails = closure_failures(g, field, B)
    notes = []
    if modular:
        grades = grades_of(filt, B)
        ones = [i for i in range(len(B)) if _is_one(B[i])]
        identity_ok = len(ones) == 1
        others = np.array([i for i in range(len(B)) if i not in ones], dtype=np.int64)
        radical_ok = bool((grades[others] >= 1).all())
        layer_ok = {}
        for k in range(1, filt.s + 1):
            inside = int(((grades >= k)).sum())
            layer_ok[k] = inside == filt.power(k).dim
        prop2 = _property_ii(filt, B, grades)
        hist = Counter(int(x) for x in grades if x >= 0)
        layer_dims = filt.dims
        grade_list = [int(x) if x >= 0 else float("inf") for x in grades]
    else:
        identity_ok = True
        radical_ok = True
        layer_ok = {}
        prop2 = True
        hist = Counter()
        layer_dims = []
        grade_list = []
        notes.append(f"char K = {field.p} does not divide |G| = {n}: radical is zero, only basis and closure apply")
    is_basis = (count_ok and distinct_ok and rank_ok and not fails and identity_ok and radical_ok
                and all(layer_ok.values()) and prop2)
    return VerifyReport(
        is_basis=bool(is_basis), count_ok=count_ok, distinct_ok=distinct_ok, rank_ok=bool(rank_ok),
        closure_failures=fails, identity_ok=identity_ok, radical_ok=bool(radical_ok),
        radical_layer_ok=layer_ok, property_ii_ok=prop2, grades=grade_list,
        histogram=dict(sorted(hist.items())), layer_dims=list(layer_dims), notes=notes,
    )


def basis_grading(filt: Filtration, cand: BasisCandidate) -> dict[int, int]:
    grades = grades_of(filt, cand.elements)
    return dict(sorted(Counter(int(x) for x in grades if x >= 0).items()))
