from __future__ import annotations

import numpy as np
import pytest

from fmb.catalog import build_group
from fmb.certificate import cert_parse, cert_read, cert_text, cert_write, make_certificate
from fmb.constructions import abelian_basis, q8_basis
from fmb.errors import ParseError, VersionMismatch
from fmb.field import field_make
from fmb.verify import verify_fm_basis


@pytest.fixture
def c2c2_cert():
    g, f = build_group("C2 x C2"), field_make(2)
    return make_certificate(g, f, abelian_basis(g, f))


def test_round_trip(tmp_path, c2c2_cert):
    path = str(tmp_path / "c.fmb")
    cert_write(path, c2c2_cert)
    back = cert_read(path)
    assert back == c2c2_cert
    assert cert_text(back) == cert_text(c2c2_cert)


def test_inline_group_rebuilds_same_table(c2c2_cert):
    back = cert_parse(cert_text(c2c2_cert))
    assert (back.group().cayley == build_group("C2 x C2").cayley).all()


def test_gf4_tokens():
    f = field_make(2, 2)
    g = build_group("Q8")
    cert = make_certificate(g, f, q8_basis(f))
    text = cert_text(cert)
    assert "field p=2 k=2 modulus=1,1,1" in text
    back = cert_parse(text)
    assert back.elements.max() <= 3 and (back.elements == cert.elements).all()
    assert verify_fm_basis(back.group(), back.field, None, back.candidate()).is_basis
    # omega is written as the token 2
    body = text.replace("order 8", "order 8").splitlines()
    assert any("2" in line.split() for line in body if line[:1].isdigit())


def test_catalog_label_form(c2c2_cert):
    c2c2_cert.group_lines = None
    back = cert_parse(cert_text(c2c2_cert))
    assert back.group_lines is None and back.group().order == 4


def test_comments_ignored(c2c2_cert):
    text = "# made by hand\n" + cert_text(c2c2_cert).replace("\norder", "  # trailing\norder")
    assert cert_parse(text) == c2c2_cert


@pytest.mark.parametrize("mutate,err", [
    (lambda t: t.replace("order 4", "order 5"), ParseError),
    (lambda t: t.replace("FMB-CERT v1", "FMB-CERT v2"), VersionMismatch),
    (lambda t: t[: len(t) // 2], ParseError),
    (lambda t: t.replace("verdict basis", "verdict basis\nextra"), ParseError),
    (lambda t: t.replace("p=2", "p=4"), ParseError),
    (lambda t: "hello\n" + t, ParseError),
])
def test_errors(c2c2_cert, mutate, err):
    with pytest.raises(err) as info:
        cert_parse(mutate(cert_text(c2c2_cert)))
    assert info.value.line is not None


def test_token_range(c2c2_cert):
    text = cert_text(c2c2_cert)
    lines = text.splitlines()
    i = next(k for k, l in enumerate(lines) if l.startswith("order"))
    lines[i + 1] = "7 " + " ".join(lines[i + 1].split()[1:])
    with pytest.raises(ParseError):
        cert_parse("\n".join(lines))
