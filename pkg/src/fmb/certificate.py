"""Text certificates for bases.

Layout (one item per line, '#' starts a comment):

    FMB-CERT v1
    field p=<p> k=<k> modulus=<c0>,<c1>,...
    group <catalog label>            or    group inline <name>
                                           gen ... / comm ... lines
                                           end
    order <N>
    N lines of N field tokens (integer codes c0 + c1 p + ...)
    verdict basis
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import build_group
from .errors import FMBError, ParseError, VersionMismatch
from .field import FieldSpec, field_make
from .pgroup import Group, group_from_spec, spec_from_text
from .verify import BasisCandidate

MAGIC = "FMB-CERT"
VERSION = "v1"


@dataclass
class Certificate:
    field: FieldSpec
    group_name: str
    group_lines: list | None  # inline presentation, or None for a catalog label
    elements: np.ndarray
    verdict: str = "basis"

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    def group(self) -> Group:
        if self.group_lines is None:
            return build_group(self.group_name)
        return group_from_spec(spec_from_text(self.group_lines, self.group_name))

    def candidate(self) -> BasisCandidate:
        return BasisCandidate(self.elements, f"certificate {self.group_name}", self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Certificate):
            return NotImplemented
        return (self.field == other.field and self.group_name == other.group_name
                and self.group_lines == other.group_lines and self.verdict == other.verdict
                and np.array_equal(self.elements, other.elements))


def make_certificate(g: Group, field: FieldSpec, cand: BasisCandidate, inline: bool = True) -> Certificate:
    lines = list(g.spec.to_text()) if inline else None
    return Certificate(field, g.name, lines, np.asarray(cand.elements, dtype=np.uint8))


def cert_text(cert: Certificate) -> str:
    f = cert.field
    out = [f"{MAGIC} {VERSION}", f.header()]
    if cert.group_lines is None:
        out.append(f"group {cert.group_name}")
    else:
        out.append(f"group inline {cert.group_name}")
        out.extend(cert.group_lines)
        out.append("end")
    out.append(f"order {cert.order}")
    for row in cert.elements:
        out.append(" ".join(str(int(x)) for x in row))
    out.append(f"verdict {cert.verdict}")
    return "\n".join(out) + "\n"


def cert_write(path: str, cert: Certificate) -> None:
    with open(path, "w") as fh:
        fh.write(cert_text(cert))


def _parse_field_line(text: str, lineno: int) -> FieldSpec:
    parts = text.split()
    if not parts or parts[0] != "field":
        raise ParseError("expected 'field p=.. k=.. modulus=..'", lineno)
    kv = {}
    for item in parts[1:]:
        if "=" not in item:
            raise ParseError(f"bad field item {item!r}", lineno)
        key, val = item.split("=", 1)
        kv[key] = val
    try:
        p = int(kv["p"])
        k = int(kv.get("k", "1"))
        mod = tuple(int(c) for c in kv["modulus"].split(",")) if "modulus" in kv else None
        return field_make(p, k, mod)
    except (KeyError, ValueError) as e:
        raise ParseError(f"bad field line: {e}", lineno)
    except FMBError as e:
        raise ParseError(str(e), lineno)


def cert_parse(text: str) -> Certificate:
    # keep line numbers while dropping comments and blank lines
    lines = []
    for i, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if s:
            lines.append((i, s))
    pos = 0

    def take(what: str):
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 0
            raise ParseError(f"unexpected end of file, expected {what}", last + 1)
        item = lines[pos]
        pos += 1
        return item

    n, s = take("header")
    head = s.split()
    if len(head) != 2 or head[0] != MAGIC:
        raise ParseError(f"not a certificate (expected '{MAGIC} {VERSION}')", n)
    if head[1] != VERSION:
        raise VersionMismatch(f"unsupported certificate version {head[1]!r}", n)
    n, s = take("field line")
    field = _parse_field_line(s, n)
    n, s = take("group line")
    gparts = s.split(None, 2)
    if len(gparts) < 2 or gparts[0] != "group":
        raise ParseError("expected 'group <name>' or 'group inline <name>'", n)
    group_lines = None
    if gparts[1] == "inline":
        name = gparts[2] if len(gparts) > 2 else "inline"
        group_lines = []
        first = None
        while True:
            n, s = take("'end' of inline group")
            if s == "end":
                break
            first = first or n
            group_lines.append(s)
        try:
            spec_from_text(group_lines, name, first or n)
        except ParseError:
            raise
        except FMBError as e:  # presentation errors other than syntax
            raise ParseError(f"inline group: {e}", first or n)
    else:
        name = s.split(None, 1)[1]
    n, s = take("order line")
    op = s.split()
    if len(op) != 2 or op[0] != "order" or not op[1].isdigit():
        raise ParseError("expected 'order <N>'", n)
    order = int(op[1])
    rows = []
    while pos < len(lines) and not lines[pos][1].startswith("verdict"):
        n, s = take("element row")
        toks = s.split()
        if len(toks) != order:
            raise ParseError(f"row has {len(toks)} tokens, expected {order}", n)
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise ParseError("non-integer field token", n)
        if any(v < 0 or v >= field.q for v in vals):
            raise ParseError(f"field token outside 0..{field.q - 1}", n)
        rows.append(vals)
    if len(rows) != order:
        raise ParseError(f"order {order} but {len(rows)} element rows", lines[pos - 1][0] if pos else 1)
    n, s = take("verdict line")
    vp = s.split()
    if len(vp) != 2 or vp[0] != "verdict":
        raise ParseError("expected 'verdict <tag>'", n)
    if pos != len(lines):
        raise ParseError("trailing content after verdict", lines[pos][0])
    elements = np.array(rows, dtype=np.uint8).reshape(order, order)
    return Certificate(field, name, group_lines, elements, vp[1])


def cert_read(path: str) -> Certificate:
    with open(path) as fh:
        return cert_parse(fh.read())
