"""Named groups: cyclic, dihedral and friends, the order-32 list, and parametric families.

Every entry is written in the plain-text presentation format read by
``spec_from_text``.  Generator order is chosen so that each conjugate
relation only involves later generators; commutators that are not listed
are trivial.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .errors import BadParams, UnknownLabel
from .pgroup import Group, GroupSpec, direct_product, group_from_spec, spec_from_text


def _spec(name: str, text: str, order: int | None = None) -> GroupSpec:
    spec = spec_from_text(text.strip().splitlines(), name=name)
    if order is not None:
        spec = GroupSpec(spec.name, spec.pcgens, spec.relorders, spec.powerrels, spec.commrels, order)
    return spec


def cyclic(n: int) -> GroupSpec:
    if n < 1:
        raise BadParams("cyclic order must be positive")
    return _spec(f"C{n}", f"gen a order {n} power 1", n)


def dihedral(n: int) -> GroupSpec:
    """D_{2^n}: a^{2^{n-1}} = b^2 = 1, b^-1 a b = a^-1."""
    if n < 2:
        raise BadParams("D_{2^n} needs n >= 2")
    h = 2 ** (n - 1)
    return _spec(f"D{2 ** n}", f"""
gen b order 2 power 1
gen a order {h} power 1
comm a b a^-2
""", 2 ** n)


def quaternion(n: int) -> GroupSpec:
    if n < 3:
        raise BadParams("Q_{2^n} needs n >= 3")
    h = 2 ** (n - 1)
    return _spec(f"Q{2 ** n}", f"""
gen b order 2 power a^{h // 2}
gen a order {h} power 1
comm a b a^-2
""", 2 ** n)


def semidihedral(n: int) -> GroupSpec:
    if n < 4:
        raise BadParams("SD_{2^n} needs n >= 4")
    h = 2 ** (n - 1)
    return _spec(f"SD{2 ** n}", f"""
gen b order 2 power 1
gen a order {h} power 1
comm a b a^{h // 2 - 2}
""", 2 ** n)


def modular(n: int) -> GroupSpec:
    if n < 4:
        raise BadParams("MD_{2^n} needs n >= 4")
    h = 2 ** (n - 1)
    return _spec(f"MD{2 ** n}", f"""
gen b order 2 power 1
gen a order {h} power 1
comm a b a^{h // 2}
""", 2 ** n)


def heis_h1(p: int) -> GroupSpec:
    """Class-3 group of order p^4 and exponent p (p > 3)."""
    if p <= 3:
        raise BadParams("H_1 needs p > 3")
    return _spec(f"H_1({p})", f"""
gen c order {p} power 1
gen a order {p} power 1
gen d order {p} power 1
gen f order {p} power 1
comm a c d
comm d c f
""", p ** 4)


def heis_h2(p: int) -> GroupSpec:
    """Heisenberg group of order p^3 times C_p (p >= 3)."""
    if p < 3:
        raise BadParams("H_2 needs p >= 3")
    return _spec(f"H_2({p})", f"""
gen c order {p} power 1
gen a order {p} power 1
gen d order {p} power 1
gen h order {p} power 1
comm a c d
""", p ** 4)


def family_two(n: int, m: int) -> GroupSpec:
    """a^{2^n} = b^{2^m} = c^2 = 1, (a, b) = c central."""
    if n < 2 or m < 2:
        raise BadParams("G(n,m) needs n, m >= 2")
    return _spec(f"G({n},{m})", f"""
gen a order {2 ** n} power 1
gen b order {2 ** m} power 1
gen c order 2 power 1
comm a b c
""", 2 ** (n + m + 1))


def family_three(n: int) -> GroupSpec:
    """a^{2^n} = b^2 = c^2 = d^2 = 1, (a, b) = c, (a, c) = d."""
    if n < 2:
        raise BadParams("G(n) needs n >= 2")
    return _spec(f"G({n})", f"""
gen a order {2 ** n} power 1
gen b order 2 power 1
gen c order 2 power 1
gen d order 2 power 1
comm a b c
comm a c d
""", 2 ** (n + 3))


_H16 = """
gen c order 2 power 1
gen a order 4 power 1
gen b order 2 power 1
comm a c b
"""

_D8YC4 = """
gen b order 2 power 1
gen c order 2 power a^2
gen a order 4 power 1
comm a b a^2
"""

# order-32 groups given by explicit presentations
_ORDER32 = {
    "G_4": """
gen b order 4 power 1
gen a order 8 power 1
comm a b a^4
""",
    "G_5": """
gen a order 8 power 1
gen b order 2 power 1
gen c order 2 power 1
comm a b c
""",
    "G_7": """
gen b order 2 power 1
gen c order 2 power 1
gen a order 8 power 1
comm a c a^4
comm a b a^4*c
""",
    "G_8": """
gen b order 2 power a^4
gen c order 2 power 1
gen a order 8 power 1
comm a c a^4
comm a b a^4*c
""",
    "G_9": """
gen c order 2 power 1
gen b order 8 power 1
gen a order 2 power 1
comm b c a*b^6
""",
    "G_10": """
gen b order 2 power a^4
gen a order 8 power 1
gen c order 2 power 1
comm a b a^6*c
""",
    "G_11": """
gen c order 2 power 1
gen b order 4 power 1
gen a order 4 power 1
comm b c a*b^2
""",
    "G_12": """
gen b order 8 power 1
gen a order 4 power 1
comm a b a^2
""",
    "G_13": """
gen b order 4 power 1
gen a order 8 power 1
comm a b a^2
""",
    "G_14": """
gen b order 4 power 1
gen a order 8 power 1
comm a b a^6
""",
    "G_15": """
gen b order 4 power a^4
gen a order 8 power 1
comm a b a^6
""",
    "G_23": """
gen b order 4 power 1
gen a order 4 power 1
gen c order 2 power 1
comm a b a^2
""",
    "G_24": """
gen c order 2 power 1
gen b order 4 power 1
gen a order 4 power 1
comm b c a^2
""",
    "G_27": """
gen c order 2 power 1
gen a order 2 power 1
gen b order 2 power 1
gen d order 2 power 1
gen e order 2 power 1
comm a c d
comm b c e
""",
    "G_28": """
gen c order 2 power 1
gen b order 2 power 1
gen a order 4 power 1
gen d order 2 power 1
comm a c a^2
comm b c d
""",
    "G_29": """
gen c order 2 power a^2
gen b order 2 power 1
gen a order 4 power 1
gen d order 2 power 1
comm a c a^2
comm b c d
""",
    "G_30": """
gen c order 2 power 1
gen b order 2 power 1
gen a order 4 power 1
gen d order 2 power 1
comm a c d
comm b c a^2
""",
    "G_31": """
gen c order 2 power 1
gen b order 4 power 1
gen a order 4 power 1
comm b c a^2*b^2
comm a c a^2
""",
    "G_32": """
gen c order 2 power a^2*b^2
gen b order 4 power 1
gen a order 4 power 1
comm b c a^2*b^2
comm a c a^2
""",
    "G_33": """
gen c order 2 power 1
gen b order 4 power 1
gen a order 4 power 1
comm b c a^2
comm a c a^2*b^2
""",
    "G_34": """
gen c order 2 power 1
gen b order 4 power 1
gen a order 4 power 1
comm b c b^2
comm a c a^2
""",
    "G_35": """
gen c order 2 power a^2
gen b order 4 power 1
gen a order 4 power 1
comm b c b^2
comm a c a^2
""",
    "G_38": """
gen b order 2 power 1
gen c order 2 power 1
gen a order 8 power 1
comm b c a^4
""",
    "G_42": """
gen b order 2 power a^4
gen c order 2 power a^4
gen a order 8 power 1
comm a b a^6
""",
    "G_43": """
gen b order 2 power 1
gen c order 2 power 1
gen a order 8 power 1
comm a b a^6
comm a c a^4
""",
    "G_44": """
gen b order 2 power a^4
gen c order 2 power 1
gen a order 8 power 1
comm a b a^6
comm a c a^4
""",
    "G_49": """
gen b order 2 power a^2
gen c order 2 power a^2
gen d order 2 power a^2
gen a order 4 power 1
comm a b a^2
comm c d a^2
""",
    "G_50": """
gen b order 2 power 1
gen c order 2 power 1
gen d order 2 power a^2
gen a order 4 power 1
comm a d a^2
comm b c a^2
comm c d a^2
""",
}

# order-32 groups named as other catalog entries
_ALIASES = {
    "G_2": "G(2,2)",
    "G_6": "G(2)",
    "G_17": "MD32",
    "G_18": "D32",
    "G_19": "SD32",
    "G_20": "Q32",
    "G_22": "H16 x C2",
    "G_25": "D8 x C4",
    "G_26": "Q8 x C4",
    "G_37": "MD16 x C2",
    "G_39": "D16 x C2",
    "G_40": "SD16 x C2",
    "G_41": "Q16 x C2",
    "G_46": "D8 x C2 x C2",
    "G_47": "Q8 x C2 x C2",
    "G_48": "D8YC4 x C2",
}


def _norm(label: str) -> str:
    return re.sub(r"[\s_{}]", "", label).upper()


def _power_of_two(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise BadParams(f"{n} is not a power of 2")
    return n.bit_length() - 1


def _single(label: str, n=None, m=None, p=None) -> GroupSpec | str:
    """Spec for a non-composite label, or an alias string to expand."""
    key = _norm(label)
    # parameters written inline, e.g. H_1(5) or G(2,3)
    mt = re.fullmatch(r"([A-Z0-9]*?)\(([0-9,]+)\)", key)
    inline: list[int] = []
    if mt:
        key = mt.group(1)
        inline = [int(v) for v in mt.group(2).split(",")]
    for name, text in _ORDER32.items():
        if key == _norm(name):
            return _spec(name, text, 32)
    for name, target in _ALIASES.items():
        if key == _norm(name):
            return target
    if key in ("H1", "H2"):
        pp = inline[0] if inline else p
        if pp is None:
            raise BadParams(f"{label} needs a prime p")
        return heis_h1(pp) if key == "H1" else heis_h2(pp)
    if key in ("G", "GNM") and (len(inline) == 2 or (n is not None and m is not None)):
        nn, mm = inline if len(inline) == 2 else (n, m)
        return family_two(nn, mm)
    if key in ("G", "GN"):
        nn = inline[0] if len(inline) == 1 else n
        if nn is None:
            raise BadParams(f"{label} needs n")
        return family_three(nn)
    if key == "H16":
        return _spec("H16", _H16, 16)
    if key == "D8YC4":
        return _spec("D8YC4", _D8YC4, 16)
    mt = re.fullmatch(r"(C|D|Q|SD|MD)(\d*)", key)
    if mt:
        kind, num = mt.group(1), mt.group(2)
        if num:
            order = int(num)
        elif n is not None:
            order = n if kind == "C" else 2 ** n
        else:
            raise BadParams(f"{label} needs an order or n")
        if kind == "C":
            return cyclic(order)
        e = _power_of_two(order)
        return {"D": dihedral, "Q": quaternion, "SD": semidihedral, "MD": modular}[kind](e)
    raise UnknownLabel(f"unknown group label {label!r}")


def resolve_alias(label: str) -> str:
    """Follow catalog aliases until a composite label or a concrete presentation."""
    parts = split_product(label)
    if len(parts) > 1:
        return " x ".join(resolve_alias(part) for part in parts)
    res = _single(parts[0])
    return resolve_alias(res) if isinstance(res, str) else parts[0]


def split_product(label: str) -> list[str]:
    return [part.strip() for part in re.split(r"\s+[x×]\s+|×", label) if part.strip()]


def catalog_lookup(name: str, n: int | None = None, m: int | None = None, p: int | None = None) -> GroupSpec:
    """Presentation for a label; composites 'A x B' get a merged presentation."""
    return build_group(name, n=n, m=m, p=p).spec


@lru_cache(maxsize=None)
def build_group(name: str, n: int | None = None, m: int | None = None, p: int | None = None) -> Group:
    parts = split_product(name)
    if len(parts) > 1:
        groups = [build_group(part, n=n, m=m, p=p) for part in parts]
        g = groups[0]
        for h in groups[1:]:
            g = direct_product(g, h)
        return _rename(g, " x ".join(gr.name for gr in groups))
    res = _single(parts[0], n=n, m=m, p=p)
    if isinstance(res, str):
        g = build_group(res)
        canonical = re.sub(r"\s+", "", parts[0])
        return _rename(g, canonical if canonical.upper().startswith("G_") else g.name)
    return group_from_spec(res)


def _rename(g: Group, name: str) -> Group:
    from dataclasses import replace

    return replace(g, spec=g.spec.renamed(name))


# catalog groups with the field the main results talk about
POSITIVE = [
    ("D8", "GF(2)"), ("D16", "GF(2)"), ("D32", "GF(2)"), ("D8 x C2", "GF(2)"),
    ("D8YC4", "GF(2)"), ("H16", "GF(2)"), ("G_2", "GF(2)"), ("G_22", "GF(2)"),
    ("G_25", "GF(2)"), ("G_39", "GF(2)"), ("G_46", "GF(2)"), ("G_48", "GF(2)"),
    ("G_49", "GF(2)"), ("Q8", "GF(4)"), ("Q8 x C2", "GF(4)"), ("G_26", "GF(4)"),
    ("G_47", "GF(4)"),
]

NEGATIVE = [
    ("H_1(5)", "GF(5)"), ("H_2(3)", "GF(3)"), ("G_6", "GF(2)"), ("G_23", "GF(2)"),
    ("G_24", "GF(2)"), ("G_27", "GF(2)"), ("G_28", "GF(2)"), ("G_29", "GF(2)"),
    ("G_30", "GF(2)"), ("G_31", "GF(2)"), ("G_32", "GF(2)"), ("G_33", "GF(2)"),
    ("G_34", "GF(2)"), ("G_35", "GF(2)"), ("G_50", "GF(2)"), ("Q8", "GF(2)"),
]


def catalog_names() -> list[str]:
    """Every fixed label the catalog knows, with small members of the families."""
    names = ["C2", "C4", "C2 x C2", "C3", "C3 x C3", "C4 x C2", "D8", "D16", "D32", "Q8", "Q16", "Q32",
             "SD16", "SD32", "MD16", "MD32", "H16", "D8YC4", "H_1(5)", "H_2(3)", "H_2(5)",
             "G(2,2)", "G(2,3)", "G(3,2)", "G(2)", "G(3)"]
    names += sorted(list(_ORDER32) + list(_ALIASES), key=lambda s: int(s[2:]))
    return names
